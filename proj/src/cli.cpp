#include "sigmarev/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "sigmarev/backtest.hpp"
#include "sigmarev/error.hpp"
#include "sigmarev/normality.hpp"
#include "sigmarev/report.hpp"
#include "sigmarev/returns.hpp"
#include "sigmarev/screener.hpp"
#include "sigmarev/signal.hpp"
#include "sigmarev/stats.hpp"

namespace sigmarev::cli {

namespace fs = std::filesystem;
using report::Json;

std::string utc_now_iso() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

// Defaults shared by every subcommand; printed by `config`.
struct Options {
  std::size_t window = 252;
  double k = 2.0;
  double alpha = 0.05;
  std::string mode = "simple";
  std::size_t momentum_pairs = 1;
  bool short_on_positive = false;
  bool adjusted = false;
  bool deterministic = false;
  std::string report_path;

  // fetch
  std::string ticker;
  std::string from;
  std::string to;
  std::string endpoint{kDefaultEndpoint};
  std::string out_path;

  // analyze
  std::string csv;
  bool emit_plots = false;
  std::string plots_dir;
  std::string normality_sample = "returns";

  // correlate / backtest
  std::vector<std::string> csvs;
  std::string events_csv;

  // screen
  std::string manifest;
  std::string data_dir;
  std::string as_of;
  std::size_t min_history = 756;
  int stale_days = 5;
  bool full_history_normality = false;

  BandConfig band() const {
    BandConfig b;
    b.window = window;
    b.k = k;
    b.mode = *parse_return_mode(mode);
    b.momentum_pairs = momentum_pairs;
    b.short_on_positive_breach = short_on_positive;
    b.validate();
    return b;
  }
  PriceField field() const { return adjusted ? PriceField::AdjClose : PriceField::Close; }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Date parse_date_arg(const std::string& text, const char* what) {
  const auto d = Date::parse(text);
  if (!d) throw UsageError(std::string(what) + " must be YYYY-MM-DD, got '" + text + "'");
  return *d;
}

void add_band_options(CLI::App* sub, Options& o, bool with_alpha) {
  sub->add_option("--window", o.window, "Rolling window in trading days (>= 30)")
      ->envname("SIGMAREV_WINDOW");
  sub->add_option("--k", o.k, "Band multiplier")->envname("SIGMAREV_K");
  if (with_alpha)
    sub->add_option("--alpha", o.alpha, "Shapiro-Wilk significance level")
        ->envname("SIGMAREV_ALPHA");
  sub->add_option("--mode", o.mode, "Return convention")
      ->check(CLI::IsMember({"simple", "ratio"}))
      ->envname("SIGMAREV_MODE");
  sub->add_option("--momentum-pairs", o.momentum_pairs, "Return pairs averaged into the slope")
      ->envname("SIGMAREV_MOMENTUM_PAIRS");
  sub->add_flag("--short-on-positive", o.short_on_positive,
                "Map positive breaches to a short verdict (experimental)")
      ->envname("SIGMAREV_SHORT_ON_POSITIVE");
  sub->add_flag("--adjusted", o.adjusted, "Use Adj Close instead of Close")
      ->envname("SIGMAREV_ADJUSTED");
}

void add_report_options(CLI::App* sub, Options& o) {
  sub->add_flag("--deterministic", o.deterministic, "Pin generated_at for reproducible output")
      ->envname("SIGMAREV_DETERMINISTIC");
  sub->add_option("--report", o.report_path, "Write the JSON report here instead of stdout")
      ->envname("SIGMAREV_REPORT");
}

class Runner {
public:
  Runner(Context& ctx, Options& o) : ctx_(ctx), o_(o) {}

  int fetch() {
    const Date from = parse_date_arg(o_.from, "--from");
    const Date to = parse_date_arg(o_.to, "--to");
    std::string ticker = o_.ticker;
    std::transform(ticker.begin(), ticker.end(), ticker.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (!valid_ticker(ticker)) throw UsageError("invalid ticker '" + o_.ticker + "'");
    const PriceSeries ps = fetch_remote(ticker, from, to, o_.endpoint, ctx_.transport);
    save_series(ps, o_.out_path);
    ctx_.err << "wrote " << ps.size() << " bars for " << ticker << " to " << o_.out_path << '\n';
    return kOk;
  }

  int analyze() {
    const BandConfig band = o_.band();
    const PriceSeries ps = load_series(o_.csv);
    const ReturnSeries rs = daily_returns(ps, band.mode, o_.field());
    const auto values = rs.values();
    const Date today = rs.points().back().date;
    const SignalDecision decision = evaluate_signal(rs, today, band);

    std::vector<double> sample;
    if (o_.normality_sample == "returns") {
      sample = values;
    } else if (o_.normality_sample == "window") {
      const std::size_t i = values.size() - 1;
      sample.assign(values.begin() + static_cast<long>(i - band.window),
                    values.begin() + static_cast<long>(i));
    } else {
      sample = histogram_breaks(values);
    }
    const NormalityReport norm = shapiro_wilk(sample, o_.alpha);

    Json payload{{"ticker", ps.ticker()},
                 {"bars", ps.size()},
                 {"first_date", ps.bars().front().date.iso()},
                 {"last_date", ps.bars().back().date.iso()},
                 {"price_field", to_string(o_.field())},
                 {"return_mode", to_string(band.mode)},
                 {"normality", report::to_json(norm, o_.normality_sample)},
                 {"signal", report::to_json(decision, band)}};

    if (o_.emit_plots) {
      const fs::path dir = o_.plots_dir.empty() ? fs::path(o_.csv).parent_path() : fs::path(o_.plots_dir);
      if (!dir.empty()) fs::create_directories(dir);
      const std::string stem = ps.ticker();
      write_file(dir / (stem + ".density.csv"), [&](std::ostream& f) {
        const auto bins = density_histogram(values);
        write_histogram_csv(bins, f);
      });
      write_file(dir / (stem + ".qq.csv"), [&](std::ostream& f) { write_qq_csv(qq_plot_data(values), f); });
      write_file(dir / (stem + ".bands.csv"), [&](std::ostream& f) { write_band_csv(rs, band, f); });
      write_file(dir / (stem + ".returns.csv"), [&](std::ostream& f) { write_returns_csv(rs, f); });
    }
    emit("analyze", std::move(payload));
    return kOk;
  }

  int correlate() {
    const PriceSeries a = load_series(o_.csvs.at(0));
    const PriceSeries b = load_series(o_.csvs.at(1));
    const ReturnMode mode = *parse_return_mode(o_.mode);
    const AlignedReturns al =
        align_by_date(daily_returns(a, mode, o_.field()), daily_returns(b, mode, o_.field()));
    const double r = correlation(al.a, al.b);
    emit("correlate", Json{{"ticker_a", a.ticker()},
                           {"ticker_b", b.ticker()},
                           {"return_mode", to_string(mode)},
                           {"n", al.dates.size()},
                           {"first_date", al.dates.front().iso()},
                           {"last_date", al.dates.back().iso()},
                           {"correlation", report::number(r)}});
    return kOk;
  }

  int backtest() {
    const BandConfig band = o_.band();
    std::vector<ReturnSeries> series;
    for (const std::string& path : o_.csvs)
      series.push_back(daily_returns(load_series(path), band.mode, o_.field()));
    const BacktestReport rep = run_backtest(series, band);
    if (!o_.events_csv.empty())
      write_file(o_.events_csv, [&](std::ostream& f) { write_events_csv(rep.events, f); });
    emit("backtest", report::to_json(rep, o_.field()));
    return kOk;
  }

  int screen() {
    ScreenConfig cfg;
    cfg.band = o_.band();
    cfg.alpha = o_.alpha;
    cfg.price_field = o_.field();
    cfg.min_history = o_.min_history;
    cfg.stale_days = o_.stale_days;
    cfg.full_history_normality = o_.full_history_normality;
    if (!o_.as_of.empty()) cfg.as_of = parse_date_arg(o_.as_of, "--as-of");

    std::ifstream mf(o_.manifest);
    if (!mf) throw Error(ErrorCode::IoError, "cannot open manifest '" + o_.manifest + "'");
    const auto tickers = read_manifest(mf);
    if (tickers.empty()) throw Error(ErrorCode::EmptyUniverse, "manifest lists no tickers");

    const fs::path dir =
        o_.data_dir.empty() ? fs::path(o_.manifest).parent_path() : fs::path(o_.data_dir);
    std::vector<PriceSeries> universe;
    std::vector<ScreenSkip> unreadable;
    for (const std::string& t : tickers) {
      const fs::path p = dir / (t + ".csv");
      if (!fs::exists(p)) {
        unreadable.push_back({t, SkipReason::MissingData, p.string()});
        continue;
      }
      try {
        universe.push_back(load_series(p, t));
      } catch (const Error& e) {
        unreadable.push_back({t, SkipReason::DataError, e.what()});
      }
    }
    if (universe.empty())
      throw Error(ErrorCode::InsufficientData, "no ticker in the manifest has readable data");

    ScreenResult result = sigmarev::screen(universe, cfg);
    result.skipped.insert(result.skipped.end(), unreadable.begin(), unreadable.end());
    sort_result(result);

    std::ostream& table_out = o_.report_path.empty() ? ctx_.err : ctx_.out;
    emit("screen", report::to_json(result, cfg));
    print_table(result, table_out);
    return kOk;
  }

  int config() {
    struct Row {
      const char* key;
      std::string value;
      const char* env;
      const char* what;
    };
    const Options d;
    const auto fmt = [](double v) {
      std::ostringstream s;
      s << v;
      return s.str();
    };
    const Row rows[] = {
        {"window", std::to_string(d.window), "SIGMAREV_WINDOW", "rolling band window, trading days"},
        {"k", fmt(d.k), "SIGMAREV_K", "band multiplier on the rolling sigma"},
        {"alpha", fmt(d.alpha), "SIGMAREV_ALPHA", "Shapiro-Wilk significance level"},
        {"mode", d.mode, "SIGMAREV_MODE", "return convention (simple | ratio)"},
        {"momentum-pairs", std::to_string(d.momentum_pairs), "SIGMAREV_MOMENTUM_PAIRS",
         "return pairs averaged into the momentum slope"},
        {"short-on-positive", "false", "SIGMAREV_SHORT_ON_POSITIVE",
         "positive breaches go short (experimental)"},
        {"adjusted", "false", "SIGMAREV_ADJUSTED", "use Adj Close instead of Close"},
        {"normality-sample", d.normality_sample, "SIGMAREV_NORMALITY_SAMPLE",
         "analyze: returns | window | breaks"},
        {"min-history", std::to_string(d.min_history), "SIGMAREV_MIN_HISTORY",
         "screen: minimum bars per ticker"},
        {"stale-days", std::to_string(d.stale_days), "SIGMAREV_STALE_DAYS",
         "screen: weekdays before a ticker is stale"},
        {"endpoint", d.endpoint, "SIGMAREV_ENDPOINT", "fetch: URL template"},
    };
    ctx_.out << std::left << std::setw(19) << "KEY" << std::setw(10) << "DEFAULT"
             << std::setw(28) << "ENV" << "DESCRIPTION\n";
    for (const Row& r : rows) {
      if (std::string_view(r.key) == "endpoint") {
        ctx_.out << std::setw(19) << r.key << std::setw(10) << "(below)" << std::setw(28) << r.env
                 << r.what << "\n  " << r.value << '\n';
        continue;
      }
      ctx_.out << std::setw(19) << r.key << std::setw(10) << r.value << std::setw(28) << r.env
               << r.what << '\n';
    }
    return kOk;
  }

private:
  template <class F>
  void write_file(const fs::path& path, F&& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    body(f);
    if (!f) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
  }

  void emit(std::string_view command, Json payload) {
    const std::string stamp =
        o_.deterministic ? std::string(report::kPinnedTimestamp)
                         : (ctx_.now_utc ? ctx_.now_utc() : utc_now_iso());
    const std::string text = report::dump(report::envelope(command, std::move(payload), stamp));
    if (o_.report_path.empty()) {
      ctx_.out << text;
    } else {
      write_file(o_.report_path, [&](std::ostream& f) { f << text; });
    }
  }

  static void print_table(const ScreenResult& r, std::ostream& out) {
    char line[160];
    out << "as of " << r.as_of.iso() << ": " << r.candidates.size() << " candidate(s), "
        << r.skipped.size() << " skipped\n";
    std::snprintf(line, sizeof line, "%-10s %10s %10s %7s %8s %8s %10s\n", "TICKER", "RETURN",
                  "BAND", "RATIO", "W", "P", "FORECAST");
    out << line;
    for (const ScreenCandidate& c : r.candidates) {
      std::snprintf(line, sizeof line, "%-10s %10.5f %10.5f %7.3f %8.5f %8.4f %10.5f\n",
                    c.ticker.c_str(), c.today_return, c.band, c.breach_ratio, c.normality.w,
                    c.normality.p_value, c.momentum.r1_forecast);
      out << line;
    }
    for (const ScreenSkip& s : r.skipped) out << "  skipped " << s.ticker << ": " << to_string(s.reason) << '\n';
  }

  Context& ctx_;
  Options& o_;
};

bool is_usage(ErrorCode c) {
  return c == ErrorCode::InvalidArgument || c == ErrorCode::EmptyUniverse ||
         c == ErrorCode::InvalidTicker;
}

}  // namespace

int run(const std::vector<std::string>& args, Context& ctx) {
  Options o;
  CLI::App app{"Rolling sigma-band reversion toolkit for daily OHLC data", "sigmarev"};
  app.require_subcommand(1);

  auto* fetch = app.add_subcommand("fetch", "Download daily bars to a CSV file");
  fetch->add_option("--ticker", o.ticker, "Symbol")->required();
  fetch->add_option("--from", o.from, "First date, YYYY-MM-DD")->required();
  fetch->add_option("--to", o.to, "Last date, YYYY-MM-DD")->required();
  fetch->add_option("--endpoint", o.endpoint,
                    "URL template with {ticker} {from} {to} {from_epoch} {to_epoch}")
      ->envname("SIGMAREV_ENDPOINT");
  fetch->add_option("--out", o.out_path, "Output CSV path")->required();

  auto* analyze = app.add_subcommand("analyze", "Normality test and latest band signal for one ticker");
  analyze->add_option("csv", o.csv, "Daily OHLC CSV")->required();
  add_band_options(analyze, o, true);
  add_report_options(analyze, o);
  analyze->add_flag("--emit-plots", o.emit_plots, "Write density, QQ, band and return CSVs")
      ->envname("SIGMAREV_EMIT_PLOTS");
  analyze->add_option("--plots-dir", o.plots_dir, "Directory for plot CSVs (default: beside the input)")
      ->envname("SIGMAREV_PLOTS_DIR");
  analyze->add_option("--normality-sample", o.normality_sample,
                      "Sample for Shapiro-Wilk: all returns, the band window, or histogram breaks")
      ->check(CLI::IsMember({"returns", "window", "breaks"}))
      ->envname("SIGMAREV_NORMALITY_SAMPLE");

  auto* correlate = app.add_subcommand("correlate", "Correlation of date-aligned daily returns");
  correlate->add_option("csv", o.csvs, "Two daily OHLC CSVs")->required()->expected(2);
  correlate->add_option("--mode", o.mode, "Return convention")
      ->check(CLI::IsMember({"simple", "ratio"}))
      ->envname("SIGMAREV_MODE");
  correlate->add_flag("--adjusted", o.adjusted, "Use Adj Close")->envname("SIGMAREV_ADJUSTED");
  add_report_options(correlate, o);

  auto* backtest = app.add_subcommand("backtest", "Replay the band rule and score next-day outcomes");
  backtest->add_option("csv", o.csvs, "Daily OHLC CSVs")->required()->expected(1, -1);
  add_band_options(backtest, o, false);
  add_report_options(backtest, o);
  backtest->add_option("--events-csv", o.events_csv, "Write the trigger event table here")
      ->envname("SIGMAREV_EVENTS_CSV");

  auto* screen_cmd = app.add_subcommand("screen", "Scan a ticker universe for band breaches");
  screen_cmd->add_option("manifest", o.manifest, "Ticker list, one per line")->required();
  screen_cmd->add_option("--data-dir", o.data_dir, "Directory of <TICKER>.csv files")
      ->envname("SIGMAREV_DATA_DIR");
  add_band_options(screen_cmd, o, true);
  add_report_options(screen_cmd, o);
  screen_cmd->add_option("--as-of", o.as_of, "Scan date (default: latest bar in the universe)")
      ->envname("SIGMAREV_AS_OF");
  screen_cmd->add_option("--min-history", o.min_history, "Minimum bars per ticker")
      ->envname("SIGMAREV_MIN_HISTORY");
  screen_cmd->add_option("--stale-days", o.stale_days, "Weekdays before a ticker counts as stale")
      ->envname("SIGMAREV_STALE_DAYS");
  screen_cmd->add_flag("--full-history-normality", o.full_history_normality,
                       "Test normality on every return instead of the band window")
      ->envname("SIGMAREV_FULL_HISTORY_NORMALITY");

  auto* config = app.add_subcommand("config", "Print the default configuration table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    ctx.out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    ctx.out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    ctx.err << "usage error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  Runner runner(ctx, o);
  try {
    if (*fetch) return runner.fetch();
    if (*analyze) return runner.analyze();
    if (*correlate) return runner.correlate();
    if (*backtest) return runner.backtest();
    if (*screen_cmd) return runner.screen();
    if (*config) return runner.config();
  } catch (const UsageError& e) {
    ctx.err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    ctx.err << "error: " << e.what() << '\n';
    return is_usage(e.code()) ? kUsage : kDataError;
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace sigmarev::cli
