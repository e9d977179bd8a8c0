#include "jmgrow/config_file.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "jmgrow/errors.hpp"

namespace jmgrow {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "dimension", "tau",       "horizon",      "window",       "speed",
    "intensity", "replications", "scaling",   "seed",         "algorithm",
    "threads",   "out",       "quad_abs_tol", "quad_rel_tol", "quad_max_depth"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) words.push_back(s.substr(start, i - start));
  }
  return words;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

struct RawEntry {
  int line = 0;
  std::string value;
};

class Parser {
 public:
  explicit Parser(std::string_view origin) : origin_(origin) {}

  ExperimentFile run(std::string_view text) {
    collect_entries(text);
    ExperimentFile out;
    CampaignConfig& campaign = out.campaign;
    ModelSpec& spec = campaign.spec;

    const int dimension = get_number<int>("dimension").value_or(1);
    spec.dimension = dimension;
    // The default window tracks the dimension key: the unit cube in R^d.
    bool window_given = false;

    if (const auto* e = find("tau")) {
      if (trim(e->value) == "lebesgue") {
        spec.time_intensity = TimeIntensity::lebesgue();
      } else if (const auto tau = parse_number<double>(trim(e->value))) {
        try {
          spec.time_intensity = TimeIntensity::power_law(*tau);
        } catch (const DomainError& err) {
          fail(*e, "tau", err.what());
        }
      } else {
        fail(*e, "tau", "expected a number or 'lebesgue'");
      }
    }

    if (const auto h = get_number<double>("horizon")) spec.horizon = *h;

    if (const auto* e = find("window")) {
      window_given = true;
      const auto words = split_words(e->value);
      try {
        if (!words.empty() && words[0] == "box") {
          std::vector<double> sides;
          for (std::size_t i = 1; i < words.size(); ++i) {
            const auto l = parse_number<double>(words[i]);
            if (!l) throw DomainError("side lengths must be numbers");
            sides.push_back(*l);
          }
          spec.window = WindowGeometry::box(std::move(sides));
        } else if (words.size() == 2 && words[0] == "ball") {
          const auto r = parse_number<double>(words[1]);
          if (!r) throw DomainError("radius must be a number");
          spec.window = WindowGeometry::ball(dimension, *r);
        } else {
          throw DomainError("expected 'box L1 [L2 ...]' or 'ball R'");
        }
      } catch (const DomainError& err) {
        fail(*e, "window", err.what());
        window_given = false;
      }
    }
    if (!window_given && dimension >= 1) {
      spec.window = WindowGeometry::box(std::vector<double>(
          static_cast<std::size_t>(dimension), 1.0));
    }

    if (const auto* e = find("speed")) {
      const auto words = split_words(e->value);
      try {
        spec.speed = parse_speed(words);
      } catch (const DomainError& err) {
        fail(*e, "speed", err.what());
      }
    }

    if (const auto s = get_number<double>("intensity")) spec.intensity_multiplier = *s;
    if (const auto r = get_number<int>("replications")) campaign.replications = *r;
    if (const auto s = get_number<std::uint64_t>("seed")) campaign.master_seed = *s;
    if (const auto t = get_number<int>("threads")) campaign.threads = *t;
    if (const auto v = get_number<double>("quad_abs_tol")) spec.quadrature.abs_tol = *v;
    if (const auto v = get_number<double>("quad_rel_tol")) spec.quadrature.rel_tol = *v;
    if (const auto v = get_number<int>("quad_max_depth")) spec.quadrature.max_depth = *v;

    if (const auto* e = find("scaling")) {
      const auto words = split_words(e->value);
      if (words.size() == 1 && words[0] == "none") {
        campaign.mode = ScalingMode::None;
      } else if (words.size() >= 2 && (words[0] == "window" || words[0] == "intensity")) {
        campaign.mode =
            words[0] == "window" ? ScalingMode::Window : ScalingMode::Intensity;
        for (std::size_t i = 1; i < words.size(); ++i) {
          const auto v = parse_number<double>(words[i]);
          if (!v) {
            fail(*e, "scaling", "scale values must be numbers");
            break;
          }
          campaign.scales.push_back(*v);
        }
      } else {
        fail(*e, "scaling", "expected 'none', 'window N...', or 'intensity S...'");
      }
    }

    if (const auto* e = find("algorithm")) {
      const auto value = trim(e->value);
      if (value == "naive") {
        campaign.algorithm = ExposureAlgorithm::Naive;
      } else if (value == "indexed") {
        campaign.algorithm = ExposureAlgorithm::Indexed;
      } else if (value == "both") {
        campaign.algorithm = ExposureAlgorithm::Both;
      } else {
        fail(*e, "algorithm", "expected naive, indexed, or both");
      }
    }

    if (const auto* e = find("out")) {
      if (trim(e->value).empty()) {
        fail(*e, "out", "path must not be empty");
      } else {
        out.out_dir = std::string(trim(e->value));
      }
    }

    // Model/campaign invariants only make sense once the keys themselves
    // parsed; otherwise the messages would just repeat the parse failures.
    if (errors_.empty()) {
      for (const auto& message : validation_errors(campaign)) {
        errors_.push_back(std::string(origin_) + ": " + message);
      }
    }
    if (!errors_.empty()) throw ConfigError(std::move(errors_));
    return out;
  }

 private:
  static SpeedDistribution parse_speed(const std::vector<std::string_view>& words) {
    if (words.empty()) throw DomainError("missing speed family");
    if (words[0] == "point" && words.size() == 2) {
      const auto c = parse_number<double>(words[1]);
      if (!c) throw DomainError("point mass value must be a number");
      return SpeedDistribution::point_mass(*c);
    }
    if (words[0] == "uniform" && words.size() == 2) {
      const auto b = parse_number<double>(words[1]);
      if (!b) throw DomainError("uniform upper bound must be a number");
      return SpeedDistribution::uniform(*b);
    }
    if (words[0] == "pareto" && words.size() == 4) {
      const auto alpha = parse_number<double>(words[1]);
      const auto x_min = parse_number<double>(words[2]);
      const auto x_max = parse_number<double>(words[3]);
      if (!alpha || !x_min || !x_max) throw DomainError("pareto parameters must be numbers");
      return SpeedDistribution::truncated_pareto(*alpha, *x_min, *x_max);
    }
    if (words[0] == "lognormal" && words.size() == 3) {
      const auto mu = parse_number<double>(words[1]);
      const auto sigma = parse_number<double>(words[2]);
      if (!mu || !sigma) throw DomainError("lognormal parameters must be numbers");
      return SpeedDistribution::log_normal(*mu, *sigma);
    }
    if (words[0] == "discrete" && words.size() >= 2) {
      std::vector<double> values, probs;
      for (std::size_t i = 1; i < words.size(); ++i) {
        const auto colon = words[i].find(':');
        if (colon == std::string_view::npos) {
          throw DomainError("discrete entries must look like value:probability");
        }
        const auto v = parse_number<double>(words[i].substr(0, colon));
        const auto p = parse_number<double>(words[i].substr(colon + 1));
        if (!v || !p) throw DomainError("discrete entries must look like value:probability");
        values.push_back(*v);
        probs.push_back(*p);
      }
      return SpeedDistribution::finite_discrete(std::move(values), std::move(probs));
    }
    throw DomainError(
        "expected 'point C', 'discrete V:P ...', 'uniform B', 'pareto A XMIN XMAX', "
        "or 'lognormal MU SIGMA'");
  }

  void collect_entries(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t eol = text.find('\n', pos);
      std::string_view line = text.substr(
          pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
      ++line_no;
      pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

      if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = trim(line);
      if (line.empty()) continue;

      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        errors_.push_back(location(line_no) + "expected 'key = value', got '" +
                          std::string(line) + "'");
        continue;
      }
      const std::string key{trim(line.substr(0, eq))};
      const std::string value{trim(line.substr(eq + 1))};
      if (!kKnownKeys.contains(key)) {
        errors_.push_back(location(line_no) + "unknown key '" + key + "'");
        continue;
      }
      if (entries_.contains(key)) {
        errors_.push_back(location(line_no) + "duplicate key '" + key + "'");
        continue;
      }
      entries_[key] = RawEntry{line_no, value};
    }
  }

  const RawEntry* find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  template <class T>
  std::optional<T> get_number(const std::string& key) {
    const auto* e = find(key);
    if (!e) return std::nullopt;
    const auto v = parse_number<T>(trim(e->value));
    if (!v) {
      fail(*e, key, "expected a number, got '" + e->value + "'");
      return std::nullopt;
    }
    return v;
  }

  std::string location(int line) const {
    return std::string(origin_) + ":" + std::to_string(line) + ": ";
  }

  void fail(const RawEntry& entry, const std::string& key, const std::string& message) {
    errors_.push_back(location(entry.line) + key + ": " + message);
  }

  std::string_view origin_;
  std::map<std::string, RawEntry, std::less<>> entries_;
  std::vector<std::string> errors_;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentFile parse_config_text(std::string_view text, std::string_view origin) {
  return Parser(origin).run(text);
}

ExperimentFile parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError({"cannot open config file '" + path.string() + "'"});
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.string());
}

std::string serialize_config(const ExperimentFile& experiment) {
  const CampaignConfig& campaign = experiment.campaign;
  const ModelSpec& spec = campaign.spec;
  std::ostringstream out;
  out << "dimension = " << spec.dimension << "\n";
  if (spec.time_intensity.is_lebesgue()) {
    out << "tau = lebesgue\n";
  } else {
    out << "tau = " << format_double(spec.time_intensity.tau()) << "\n";
  }
  out << "horizon = " << format_double(spec.horizon) << "\n";
  if (spec.window.shape() == WindowShape::Box) {
    out << "window = box";
    for (const double l : spec.window.side_lengths()) out << " " << format_double(l);
    out << "\n";
  } else {
    out << "window = ball " << format_double(spec.window.radius()) << "\n";
  }
  out << "speed = ";
  switch (spec.speed.kind()) {
    case SpeedKind::PointMass:
      out << "point " << format_double(spec.speed.point_value());
      break;
    case SpeedKind::FiniteDiscrete:
      out << "discrete";
      for (std::size_t k = 0; k < spec.speed.values().size(); ++k) {
        out << " " << format_double(spec.speed.values()[k]) << ":"
            << format_double(spec.speed.probabilities()[k]);
      }
      break;
    case SpeedKind::Uniform:
      out << "uniform " << format_double(spec.speed.upper_bound());
      break;
    case SpeedKind::TruncatedPareto:
      out << "pareto " << format_double(spec.speed.pareto_alpha()) << " "
          << format_double(spec.speed.pareto_x_min()) << " "
          << format_double(spec.speed.pareto_x_max());
      break;
    case SpeedKind::LogNormal:
      out << "lognormal " << format_double(spec.speed.log_normal_mu()) << " "
          << format_double(spec.speed.log_normal_sigma());
      break;
  }
  out << "\n";
  out << "intensity = " << format_double(spec.intensity_multiplier) << "\n";
  out << "replications = " << campaign.replications << "\n";
  out << "scaling = ";
  switch (campaign.mode) {
    case ScalingMode::None:
      out << "none";
      break;
    case ScalingMode::Window:
      out << "window";
      for (const double s : campaign.scales) out << " " << format_double(s);
      break;
    case ScalingMode::Intensity:
      out << "intensity";
      for (const double s : campaign.scales) out << " " << format_double(s);
      break;
  }
  out << "\n";
  out << "seed = " << campaign.master_seed << "\n";
  out << "algorithm = "
      << (campaign.algorithm == ExposureAlgorithm::Naive
              ? "naive"
              : campaign.algorithm == ExposureAlgorithm::Indexed ? "indexed" : "both")
      << "\n";
  out << "threads = " << campaign.threads << "\n";
  out << "out = " << experiment.out_dir.string() << "\n";
  out << "quad_abs_tol = " << format_double(spec.quadrature.abs_tol) << "\n";
  out << "quad_rel_tol = " << format_double(spec.quadrature.rel_tol) << "\n";
  out << "quad_max_depth = " << spec.quadrature.max_depth << "\n";
  return out.str();
}

}  // namespace jmgrow
