#include "snasa/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <thread>

#include "snasa/baseline_asv.hpp"
#include "snasa/classifier.hpp"
#include "snasa/corpus.hpp"
#include "snasa/encoder.hpp"
#include "snasa/error.hpp"
#include "snasa/featurizer.hpp"
#include "snasa/fileio.hpp"
#include "snasa/model_io.hpp"
#include "snasa/strings.hpp"
#include "snasa/trainer.hpp"

namespace snasa::cli {

namespace {

// Every run-level knob, addressable by config-file key. Flags given on
// the command line override file values, which override the defaults.
struct Settings {
  TrainConfig tc;
  int threads = 0;  // 0 = machine parallelism
  bool lowercase = true;
  int min_count = 1;
  int refs_per_class = kDefaultReferencesPerClass;
  std::string policy = "meansim";
  double test_fraction = 0.0;
  double lambda = 0.001;
  double tol = 0.001;
  int max_iters = 2000;

  void apply(const std::string& key, const std::string& value);
  std::string echo() const;
  int resolved_threads() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
};

void Settings::apply(const std::string& key, const std::string& value) {
  const auto ctx = "config key '" + key + "'";
  if (key == "margin") {
    tc.margin = parse_double(value, ctx);
  } else if (key == "learning_rate") {
    tc.learning_rate = parse_double(value, ctx);
  } else if (key == "epochs") {
    tc.epochs = static_cast<int>(parse_int(value, ctx));
  } else if (key == "batch_size") {
    tc.batch_size = static_cast<int>(parse_int(value, ctx));
  } else if (key == "negatives_per_positive") {
    tc.negatives_per_positive = static_cast<int>(parse_int(value, ctx));
  } else if (key == "positives_per_sentence") {
    tc.positives_per_sentence = static_cast<int>(parse_int(value, ctx));
  } else if (key == "clip_norm") {
    tc.clip_norm = parse_double(value, ctx);
  } else if (key == "optimizer") {
    if (value == "sgd") {
      tc.optimizer = OptimizerKind::Sgd;
    } else if (value == "sgd-momentum") {
      tc.optimizer = OptimizerKind::SgdMomentum;
    } else {
      throw UsageError("optimizer must be sgd or sgd-momentum, got '" + value + "'");
    }
  } else if (key == "momentum") {
    tc.momentum = parse_double(value, ctx);
  } else if (key == "seed") {
    tc.seed = static_cast<std::uint64_t>(parse_int(value, ctx));
  } else if (key == "embedding_dim") {
    tc.embedding_dim = static_cast<int>(parse_int(value, ctx));
  } else if (key == "hidden_dim") {
    tc.hidden_dim = static_cast<int>(parse_int(value, ctx));
  } else if (key == "output_dim") {
    tc.output_dim = static_cast<int>(parse_int(value, ctx));
  } else if (key == "threads") {
    threads = static_cast<int>(parse_int(value, ctx));
  } else if (key == "lowercase") {
    if (value != "0" && value != "1") throw UsageError("lowercase must be 0 or 1");
    lowercase = value == "1";
  } else if (key == "min_count") {
    min_count = static_cast<int>(parse_int(value, ctx));
  } else if (key == "refs_per_class") {
    refs_per_class = static_cast<int>(parse_int(value, ctx));
  } else if (key == "policy") {
    ClassifyPolicy::parse(value);  // validate eagerly
    policy = value;
  } else if (key == "test_fraction") {
    test_fraction = parse_double(value, ctx);
  } else if (key == "lambda") {
    lambda = parse_double(value, ctx);
  } else if (key == "tol") {
    tol = parse_double(value, ctx);
  } else if (key == "max_iters") {
    max_iters = static_cast<int>(parse_int(value, ctx));
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

std::string Settings::echo() const {
  std::map<std::string, std::string> kv;
  kv["margin"] = format_double(tc.margin);
  kv["learning_rate"] = format_double(tc.learning_rate);
  kv["epochs"] = std::to_string(tc.epochs);
  kv["batch_size"] = std::to_string(tc.batch_size);
  kv["negatives_per_positive"] = std::to_string(tc.negatives_per_positive);
  kv["positives_per_sentence"] = std::to_string(tc.positives_per_sentence);
  kv["clip_norm"] = format_double(tc.clip_norm);
  kv["optimizer"] = tc.optimizer == OptimizerKind::Sgd ? "sgd" : "sgd-momentum";
  kv["momentum"] = format_double(tc.momentum);
  kv["seed"] = std::to_string(tc.seed);
  kv["embedding_dim"] = std::to_string(tc.embedding_dim);
  kv["hidden_dim"] = std::to_string(tc.hidden_dim);
  kv["output_dim"] = std::to_string(tc.output_dim);
  kv["threads"] = std::to_string(threads);
  kv["lowercase"] = lowercase ? "1" : "0";
  kv["min_count"] = std::to_string(min_count);
  kv["refs_per_class"] = std::to_string(refs_per_class);
  kv["policy"] = policy;
  kv["test_fraction"] = format_double(test_fraction);
  kv["lambda"] = format_double(lambda);
  kv["tol"] = format_double(tol);
  kv["max_iters"] = std::to_string(max_iters);

  std::string out;
  for (const auto& [key, value] : kv) {
    out += key + " = " + value + "\n";
  }
  return out;
}

void load_config_file(Settings& settings, const std::string& path) {
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("expected `key = value` at " + path + ":" + std::to_string(i + 1));
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    settings.apply(key, value);
  }
}

LabelScheme require_scheme(const std::string& text) {
  const auto scheme = parse_scheme(text);
  if (!scheme) throw UsageError("scheme must be 3 or 4, got '" + text + "'");
  return *scheme;
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory '" + dir + "': " + ec.message());
}

Dataset concat_for_vocab(const Dataset& a, const Dataset& b) {
  Dataset joined;
  joined.name = a.name + "+" + b.name;
  joined.scheme = a.scheme;
  joined.sentences = a.sentences;
  joined.sentences.insert(joined.sentences.end(), b.sentences.begin(), b.sentences.end());
  return joined;
}

void verify_refs_match_model(const ReferenceSet& refs, const Model& model) {
  if (refs.model_checksum != params_checksum(model.params)) {
    throw DataError("reference set was built with a different model (checksum mismatch)");
  }
}

// Flag holders; only values the user actually passed override Settings.
struct CommonFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  int threads = 0;
  double margin = 0.0;
  int refs_per_class = 0;
  std::string policy;

  CLI::Option* config_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* margin_opt = nullptr;
  CLI::Option* refs_opt = nullptr;
  CLI::Option* policy_opt = nullptr;

  void attach(CLI::App* sub) {
    config_opt = sub->add_option("--config", config_path, "Config file (`key = value` lines)");
    seed_opt = sub->add_option("--seed", seed, "Seed for every random draw in this run");
    threads_opt = sub->add_option("--threads", threads, "Worker cap (0 = machine parallelism)");
    margin_opt = sub->add_option("--margin", margin, "Contrastive margin in (0,1)");
    refs_opt = sub->add_option("--refs-per-class", refs_per_class,
                               "References sampled per class (default 100)");
    policy_opt =
        sub->add_option("--policy", policy, "Classification policy: meansim, knn:<k>, threshold:<t>");
  }

  void resolve(Settings& settings) const {
    if (config_opt->count() > 0) load_config_file(settings, config_path);
    if (seed_opt->count() > 0) settings.tc.seed = seed;
    if (threads_opt->count() > 0) settings.threads = threads;
    if (margin_opt->count() > 0) settings.tc.margin = margin;
    if (refs_opt->count() > 0) settings.refs_per_class = refs_per_class;
    if (policy_opt->count() > 0) {
      ClassifyPolicy::parse(policy);
      settings.policy = policy;
    }
  }
};

int dispatch(const std::vector<std::string>& args);

}  // namespace

int run_command(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

namespace {

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Cross-lingual sentiment embeddings: twin Bi-LSTM encoder with "
               "shared parameters, contrastive training, reference-set classification"};
  app.require_subcommand(1);

  Settings settings;

  // build-vocab
  auto* build_vocab = app.add_subcommand("build-vocab", "Build a trigram vocabulary from datasets");
  std::vector<std::string> bv_inputs;
  std::string bv_scheme = "3", bv_out, bv_lang;
  int bv_lowercase = 1, bv_min_count = 1;
  build_vocab->add_option("--input", bv_inputs, "Dataset TSV (repeatable; union is used)")
      ->required();
  build_vocab->add_option("--scheme", bv_scheme, "Label scheme: 3 or 4");
  build_vocab->add_option("--out", bv_out, "Vocabulary file to write")->required();
  build_vocab->add_option("--lowercase", bv_lowercase, "1 to lowercase ASCII letters (default 1)");
  build_vocab->add_option("--min-count", bv_min_count, "Minimum trigram count (default 1)");
  build_vocab->add_option("--lang", bv_lang, "Language tag stored in the vocabulary");

  // emoji-map
  auto* emoji = app.add_subcommand("emoji-map", "Label raw sentences by their emojis");
  std::string em_input, em_map, em_out;
  bool em_strip = false;
  emoji->add_option("--input", em_input, "Raw TSV `id<TAB>text`")->required();
  emoji->add_option("--map", em_map, "Emoji map TSV `emoji<TAB>label`")->required();
  emoji->add_option("--out", em_out, "Labeled dataset TSV to write")->required();
  emoji->add_flag("--strip-emojis", em_strip, "Remove mapped emojis from the text");

  // make-pairs
  auto* make_pairs = app.add_subcommand("make-pairs", "Generate the cross-lingual pair cache");
  std::string mp_poor, mp_rich, mp_scheme = "3", mp_out;
  CommonFlags mp_common;
  int mp_positives = 0, mp_ratio = 0;
  make_pairs->add_option("--poor", mp_poor, "Resource-poor dataset TSV")->required();
  make_pairs->add_option("--rich", mp_rich, "Resource-rich dataset TSV")->required();
  make_pairs->add_option("--scheme", mp_scheme, "Label scheme: 3 or 4");
  make_pairs->add_option("--out", mp_out, "Pair cache TSV to write")->required();
  auto* mp_pos_opt =
      make_pairs->add_option("--positives", mp_positives, "Positive pairs per sentence (default 4)");
  auto* mp_ratio_opt =
      make_pairs->add_option("--ratio", mp_ratio, "Negatives per positive (default 1)");
  mp_common.attach(make_pairs);

  // train
  auto* train_cmd = app.add_subcommand("train", "Train the shared encoder on two corpora");
  std::string tr_poor, tr_rich, tr_scheme = "3", tr_out;
  CommonFlags tr_common;
  double tr_test_fraction = -1.0;
  train_cmd->add_option("--poor", tr_poor, "Resource-poor dataset TSV")->required();
  train_cmd->add_option("--rich", tr_rich, "Resource-rich dataset TSV")->required();
  train_cmd->add_option("--scheme", tr_scheme, "Label scheme: 3 or 4");
  train_cmd->add_option("--out", tr_out, "Output directory (model.bin, epochs.csv, config.echo)")
      ->required();
  auto* tr_tf_opt = train_cmd->add_option(
      "--test-fraction", tr_test_fraction,
      "Hold out this fraction of the poor corpus for per-epoch accuracy (0 disables)");
  tr_common.attach(train_cmd);

  // build-refs
  auto* build_refs = app.add_subcommand("build-refs", "Sample and embed per-class references");
  std::string br_model, br_rich, br_scheme = "3", br_out;
  CommonFlags br_common;
  build_refs->add_option("--model", br_model, "Model file")->required();
  build_refs->add_option("--rich", br_rich, "Resource-rich dataset TSV")->required();
  build_refs->add_option("--scheme", br_scheme, "Label scheme: 3 or 4");
  build_refs->add_option("--out", br_out, "Reference file to write")->required();
  br_common.attach(build_refs);

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Classify a sentence or a file of sentences");
  std::string cl_model, cl_refs, cl_text, cl_input;
  CommonFlags cl_common;
  classify_cmd->add_option("--model", cl_model, "Model file")->required();
  classify_cmd->add_option("--refs", cl_refs, "Reference file")->required();
  auto* cl_text_opt = classify_cmd->add_option("--text", cl_text, "One sentence to classify");
  auto* cl_input_opt =
      classify_cmd->add_option("--input", cl_input, "Raw TSV `id<TAB>text` to classify");
  cl_common.attach(classify_cmd);

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a labeled test set against references");
  std::string ev_model, ev_refs, ev_test, ev_scheme = "3", ev_out;
  CommonFlags ev_common;
  evaluate_cmd->add_option("--model", ev_model, "Model file")->required();
  evaluate_cmd->add_option("--refs", ev_refs, "Reference file")->required();
  evaluate_cmd->add_option("--test", ev_test, "Labeled test dataset TSV")->required();
  evaluate_cmd->add_option("--scheme", ev_scheme, "Label scheme: 3 or 4");
  evaluate_cmd->add_option("--out", ev_out, "Output directory (eval.csv, config.echo)")->required();
  bool ev_micro = false;
  evaluate_cmd->add_flag("--micro", ev_micro, "Add micro-averaged metrics to the report");
  ev_common.attach(evaluate_cmd);

  // baseline-asv
  auto* baseline = app.add_subcommand("baseline-asv",
                                      "Averaged word vectors + logistic regression baseline");
  std::string ba_vectors, ba_train, ba_test, ba_scheme = "3", ba_out;
  CommonFlags ba_common;
  double ba_lambda = -1.0, ba_tol = -1.0;
  baseline->add_option("--vectors", ba_vectors, "Word-vector file `word v1 ... vk`")->required();
  baseline->add_option("--train", ba_train, "Labeled training TSV")->required();
  baseline->add_option("--test", ba_test, "Labeled test TSV")->required();
  baseline->add_option("--scheme", ba_scheme, "Label scheme: 3 or 4");
  baseline->add_option("--out", ba_out, "Output directory (eval.csv, config.echo)")->required();
  auto* ba_lambda_opt =
      baseline->add_option("--lambda", ba_lambda, "L2 regularization strength (default 0.001)");
  auto* ba_tol_opt =
      baseline->add_option("--tol", ba_tol, "Gradient tolerance for convergence (default 0.001)");
  bool ba_micro = false;
  baseline->add_flag("--micro", ba_micro, "Add micro-averaged metrics to the report");
  ba_common.attach(baseline);

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Unique trigram and word counts of a dataset");
  std::string st_input, st_scheme = "3";
  int st_lowercase = 1;
  stats_cmd->add_option("--input", st_input, "Dataset TSV")->required();
  stats_cmd->add_option("--scheme", st_scheme, "Label scheme: 3 or 4");
  stats_cmd->add_option("--lowercase", st_lowercase, "1 to lowercase ASCII letters (default 1)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*build_vocab) {
    const auto scheme = require_scheme(bv_scheme);
    Dataset joined;
    joined.scheme = scheme;
    for (const auto& path : bv_inputs) {
      const Dataset d = load_dataset(path, scheme);
      joined.name = joined.name.empty() ? d.name : joined.name + "+" + d.name;
      joined.sentences.insert(joined.sentences.end(), d.sentences.begin(), d.sentences.end());
    }
    VocabOptions opts;
    opts.lowercase = bv_lowercase != 0;
    if (bv_min_count < 1) throw UsageError("min-count must be >= 1");
    opts.min_count = static_cast<std::uint32_t>(bv_min_count);
    opts.language = bv_lang;
    const auto vocab = build_vocabulary(joined, opts);
    save_vocabulary(vocab, bv_out);
    std::cout << "vocabulary_size=" << vocab.size() << "\n";
    return 0;
  }

  if (*emoji) {
    const auto raw = load_raw_sentences(em_input);
    const auto map = load_emoji_map(em_map);
    const auto result = apply_emoji_map(raw, map, em_strip);
    save_dataset(result.dataset, em_out);
    std::cout << "labeled=" << result.dataset.sentences.size()
              << " dropped_unmapped=" << result.dropped_unmapped
              << " dropped_conflicting=" << result.dropped_conflicting
              << " dropped_empty=" << result.dropped_empty << "\n";
    return 0;
  }

  if (*make_pairs) {
    mp_common.resolve(settings);
    if (mp_pos_opt->count() > 0) settings.tc.positives_per_sentence = mp_positives;
    if (mp_ratio_opt->count() > 0) settings.tc.negatives_per_positive = mp_ratio;
    const auto scheme = require_scheme(mp_scheme);
    const Dataset poor = load_dataset(mp_poor, scheme);
    const Dataset rich = load_dataset(mp_rich, scheme);
    const auto pairs = generate_pairs(poor, rich, settings.tc.negatives_per_positive,
                                      settings.tc.positives_per_sentence, settings.tc.seed);
    save_pair_cache(pairs, poor, rich, mp_out);
    std::size_t positives = 0;
    for (const auto& p : pairs) positives += p.label > 0 ? 1 : 0;
    std::cout << "pairs=" << pairs.size() << " positive=" << positives
              << " negative=" << pairs.size() - positives << "\n";
    return 0;
  }

  if (*train_cmd) {
    tr_common.resolve(settings);
    if (tr_tf_opt->count() > 0) settings.test_fraction = tr_test_fraction;
    const auto scheme = require_scheme(tr_scheme);
    const Dataset poor_all = load_dataset(tr_poor, scheme);
    const Dataset rich = load_dataset(tr_rich, scheme);

    Dataset poor_train = poor_all;
    std::optional<Dataset> poor_eval;
    if (settings.test_fraction > 0.0) {
      auto split = split_dataset(poor_all, settings.test_fraction, settings.tc.seed);
      poor_train = std::move(split.train);
      poor_eval = std::move(split.test);
    }

    VocabOptions opts;
    opts.lowercase = settings.lowercase;
    opts.min_count = static_cast<std::uint32_t>(std::max(1, settings.min_count));
    const TrigramVocabulary vocab = build_vocabulary(concat_for_vocab(poor_train, rich), opts);

    TrainConfig tc = settings.tc;
    tc.threads = settings.resolved_threads();

    EvalHook hook;
    const ClassifyPolicy policy = ClassifyPolicy::parse(settings.policy);
    if (poor_eval) {
      hook = [&](const SiameseEncoderParams& params) {
        Model snapshot{params, vocab};
        const auto refs =
            build_reference_set(snapshot, rich, settings.refs_per_class, settings.tc.seed);
        return evaluate(snapshot, refs, *poor_eval, policy).accuracy;
      };
    }

    ensure_out_dir(tr_out);
    const auto result = train(poor_train, rich, tc, vocab, vocab, hook, &std::cout);
    save_model(result.params, vocab, tr_out + "/model.bin");
    write_epoch_csv(result.log, tr_out + "/epochs.csv");
    write_file(tr_out + "/config.echo", settings.echo());
    return 0;
  }

  if (*build_refs) {
    br_common.resolve(settings);
    const auto scheme = require_scheme(br_scheme);
    const Model model = load_model(br_model);
    const Dataset rich = load_dataset(br_rich, scheme);
    const auto refs =
        build_reference_set(model, rich, settings.refs_per_class, settings.tc.seed);
    save_reference_set(refs, br_out);
    std::size_t total = 0;
    for (const auto& cls : refs.per_class) total += cls.size();
    std::cout << "references=" << total << "\n";
    return 0;
  }

  if (*classify_cmd) {
    cl_common.resolve(settings);
    if ((cl_text_opt->count() > 0) == (cl_input_opt->count() > 0)) {
      throw UsageError("classify needs exactly one of --text or --input");
    }
    const Model model = load_model(cl_model);
    const ReferenceSet refs = load_reference_set(cl_refs);
    verify_refs_match_model(refs, model);
    const ClassifyPolicy policy = ClassifyPolicy::parse(settings.policy);

    if (cl_text_opt->count() > 0) {
      const auto emb = encode(encode_sentence(cl_text, model.vocab), model.params);
      std::cout << classify(emb, refs, policy).token() << "\n";
    } else {
      for (const auto& raw : load_raw_sentences(cl_input)) {
        const auto emb = encode(encode_sentence(raw.text, model.vocab, raw.id), model.params);
        std::cout << raw.id << "\t" << classify(emb, refs, policy).token() << "\n";
      }
    }
    return 0;
  }

  if (*evaluate_cmd) {
    ev_common.resolve(settings);
    const auto scheme = require_scheme(ev_scheme);
    const Model model = load_model(ev_model);
    const ReferenceSet refs = load_reference_set(ev_refs);
    verify_refs_match_model(refs, model);
    const Dataset test = load_dataset(ev_test, scheme);
    const ClassifyPolicy policy = ClassifyPolicy::parse(settings.policy);
    EvalReport report = evaluate(model, refs, test, policy);
    report.include_micro = ev_micro;
    ensure_out_dir(ev_out);
    write_eval_csv(report, ev_out + "/eval.csv");
    write_file(ev_out + "/config.echo", settings.echo());
    std::cout << "accuracy=" << format_double(report.accuracy)
              << " macro_f1=" << format_double(report.macro_f1) << "\n";
    return 0;
  }

  if (*baseline) {
    ba_common.resolve(settings);
    if (ba_lambda_opt->count() > 0) settings.lambda = ba_lambda;
    if (ba_tol_opt->count() > 0) settings.tol = ba_tol;
    const auto scheme = require_scheme(ba_scheme);
    const auto table = load_word_vectors(ba_vectors);
    const Dataset train_set = load_dataset(ba_train, scheme);
    const Dataset test_set = load_dataset(ba_test, scheme);

    std::vector<LabeledVector> features;
    features.reserve(train_set.sentences.size());
    for (const auto& s : train_set.sentences) {
      features.emplace_back(average_sentence_vector(s.text, table), s.label);
    }
    const LogRegModel model =
        train_logreg(features, scheme, settings.lambda, settings.tol, settings.max_iters);

    const std::size_t k = class_count(scheme);
    std::vector<std::vector<std::size_t>> confusion(k, std::vector<std::size_t>(k, 0));
    for (const auto& s : test_set.sentences) {
      const auto predicted = predict_logreg(model, average_sentence_vector(s.text, table));
      confusion[s.label.index()][predicted.index()] += 1;
    }
    EvalReport report = report_from_confusion(confusion, scheme);
    report.method = "asv(lambda=" + format_double(settings.lambda) +
                    ",tol=" + format_double(settings.tol) + ")";
    report.include_micro = ba_micro;
    ensure_out_dir(ba_out);
    write_eval_csv(report, ba_out + "/eval.csv");
    write_file(ba_out + "/config.echo", settings.echo());
    std::cout << "accuracy=" << format_double(report.accuracy)
              << " macro_f1=" << format_double(report.macro_f1) << "\n";
    return 0;
  }

  if (*stats_cmd) {
    const auto scheme = require_scheme(st_scheme);
    const Dataset d = load_dataset(st_input, scheme);
    const auto stats = vocabulary_stats(d, st_lowercase != 0);
    std::cout << "unique_trigrams=" << stats.unique_trigrams << "\n"
              << "unique_words=" << stats.unique_words << "\n";
    return 0;
  }

  throw UsageError("no subcommand given");
}

}  // namespace

}  // namespace snasa::cli
