#include "hopper/repository.hpp"

#include "hopper/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hopper {

void to_json(nlohmann::json& j, const HistoryPoint& h) {
  j = {{"generation", h.generation}, {"objective", h.objective}, {"value", h.value}};
}

void from_json(const nlohmann::json& j, HistoryPoint& h) {
  h.generation = j.at("generation").get<std::size_t>();
  h.objective = j.at("objective").get<std::string>();
  h.value = j.at("value").get<double>();
}

std::string combinatorial_key(const Hull& hull) {
  std::vector<std::vector<std::size_t>> facets;
  facets.reserve(hull.facets.size());
  for (const auto& f : hull.facets) facets.push_back(f.vertices);
  std::sort(facets.begin(), facets.end());
  std::string key = std::to_string(hull.vertex_count) + ":";
  for (const auto& f : facets) {
    for (std::size_t v : f) key += std::to_string(v) + ",";
    key += ";";
  }
  return key;
}

Repository::Repository(RepositoryConfig config) : config_(config), rng_(config.seed) {
  if (config_.max_size == 0) throw ConfigError("repository max size must be positive");
  if (config_.eviction_sample == 0) config_.eviction_sample = 1;
  if (!(config_.tau > 0)) throw ConfigError("repository tau must be positive");
}

double Repository::importance_of(const RepositoryEntry& e) const {
  const double age = static_cast<double>(clock_ - std::min(clock_, e.inserted_at));
  const double value = config_.fitness_weight * e.fitness.value / scale_ +
                       config_.recency_weight * std::exp(-age / config_.tau) -
                       config_.failure_weight * static_cast<double>(e.failure_count);
  return std::isfinite(value) ? value : 0.0;
}

void Repository::refresh_best() {
  best_ = 0;
  scale_ = 1e-300;
  for (std::size_t i = 0; i < store_.size(); ++i) {
    if (store_[i].fitness.value > store_[best_].fitness.value) best_ = i;
    scale_ = std::max(scale_, std::abs(store_[i].fitness.value));
  }
  if (scale_ <= 1e-300) scale_ = 1;
}

void Repository::evict_one() {
  std::uniform_int_distribution<std::size_t> pick(0, store_.size() - 1);
  std::size_t victim = store_.size();
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < config_.eviction_sample; ++s) {
    std::size_t i = pick(rng_);
    if (i == best_) continue;
    double imp = importance_of(store_[i]);
    if (imp < lowest) {
      lowest = imp;
      victim = i;
    }
  }
  if (victim == store_.size()) victim = best_ == 0 ? 1 : 0;
  if (!store_[victim].key.empty()) by_key_.erase(store_[victim].key);
  if (victim != store_.size() - 1) {
    std::swap(store_[victim], store_.back());
    if (!store_[victim].key.empty()) by_key_[store_[victim].key] = victim;
  }
  store_.pop_back();
  ++evictions_;
  refresh_best();
}

InsertResult Repository::insert(RepositoryEntry entry) {
  std::lock_guard lock(mutex_);
  InsertResult result;
  if (!std::isfinite(entry.fitness.value)) return result;
  ++clock_;
  entry.inserted_at = clock_;
  entry.id = next_id_++;
  const double old_scale = scale_;
  scale_ = std::max(store_.empty() ? 1e-300 : scale_, std::abs(entry.fitness.value));
  if (scale_ <= 1e-300) scale_ = 1;
  entry.importance = importance_of(entry);

  if (!entry.key.empty()) {
    if (auto it = by_key_.find(entry.key); it != by_key_.end()) {
      result.duplicate = true;
      RepositoryEntry& existing = store_[it->second];
      const bool keeps_best = it->second != best_ || entry.fitness.value >= existing.fitness.value;
      if (entry.importance > importance_of(existing) && keeps_best) {
        existing = std::move(entry);
        result.accepted = true;
        result.id = existing.id;
      }
      if (!result.accepted) scale_ = old_scale;
      refresh_best();
      return result;
    }
  }

  result.accepted = true;
  result.id = entry.id;
  if (!entry.key.empty()) by_key_[entry.key] = store_.size();
  store_.push_back(std::move(entry));
  refresh_best();
  while (store_.size() > config_.max_size) {
    evict_one();
    ++result.evicted;
  }
  return result;
}

std::optional<RepositoryEntry> Repository::steal(std::mt19937_64& rng) const {
  std::lock_guard lock(mutex_);
  if (store_.empty()) return std::nullopt;
  std::bernoulli_distribution read(std::clamp(config_.p_read, 0.0, 1.0));
  if (!read(rng)) return std::nullopt;
  std::vector<double> weights;
  weights.reserve(store_.size());
  for (const auto& e : store_) weights.push_back(std::max(importance_of(e), 1e-6));
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  RepositoryEntry copy = store_[pick(rng)];
  copy.importance = importance_of(copy);
  return copy;
}

void Repository::record_failure(std::uint64_t id) {
  std::lock_guard lock(mutex_);
  for (auto& e : store_) {
    if (e.id == id) {
      ++e.failure_count;
      return;
    }
  }
}

std::size_t Repository::size() const {
  std::lock_guard lock(mutex_);
  return store_.size();
}

std::optional<RepositoryEntry> Repository::best() const {
  std::lock_guard lock(mutex_);
  if (store_.empty()) return std::nullopt;
  RepositoryEntry copy = store_[best_];
  copy.importance = importance_of(copy);
  return copy;
}

double Repository::best_value() const {
  std::lock_guard lock(mutex_);
  return store_.empty() ? -std::numeric_limits<double>::infinity() : store_[best_].fitness.value;
}

std::vector<RepositoryEntry> Repository::entries() const {
  std::lock_guard lock(mutex_);
  std::vector<RepositoryEntry> out = store_;
  for (auto& e : out) e.importance = importance_of(e);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.fitness.value != b.fitness.value) return a.fitness.value > b.fitness.value;
    return a.id < b.id;
  });
  return out;
}

std::size_t Repository::evictions() const {
  std::lock_guard lock(mutex_);
  return evictions_;
}

namespace {
constexpr const char* kRepositoryHeader = "hopper-repository v1";
constexpr const char* kSiloHeader = "hopper-silo v1";
}  // namespace

void Repository::save(const std::filesystem::path& path) const {
  auto list = entries();
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << kRepositoryHeader << "\n" << list.size() << "\n";
  for (const auto& e : list) {
    nlohmann::json meta = {{"id", e.id},
                           {"importance", e.importance},
                           {"generation", e.generation},
                           {"ascensionGeneration", e.ascension_generation ? nlohmann::json(*e.ascension_generation) : nlohmann::json()},
                           {"failures", e.failure_count},
                           {"fitness", e.fitness},
                           {"history", e.history},
                           {"key", e.key}};
    out << "entry " << meta.dump() << "\n";
    write_polytope(out, e.polytope);
  }
  if (!out) throw Error("failed writing " + path.string());
}

std::unique_ptr<Repository> Repository::load(const std::filesystem::path& path, RepositoryConfig config) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kRepositoryHeader) throw ParseError("not a repository snapshot: " + path.string());
  std::size_t count = 0;
  if (!std::getline(in, line)) throw ParseError("missing entry count");
  count = std::stoul(line);
  config.max_size = std::max(config.max_size, count);
  auto repo = std::make_unique<Repository>(config);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line) || line.rfind("entry ", 0) != 0) throw ParseError("missing entry line " + std::to_string(i));
    auto meta = nlohmann::json::parse(line.substr(6), nullptr, false);
    if (meta.is_discarded()) throw ParseError("bad entry metadata");
    RepositoryEntry e;
    e.polytope = parse_polytope(in);
    e.fitness = meta.at("fitness").get<FitnessVector>();
    e.generation = meta.value("generation", std::size_t{0});
    e.failure_count = meta.value("failures", std::size_t{0});
    if (meta.contains("ascensionGeneration") && !meta["ascensionGeneration"].is_null())
      e.ascension_generation = meta["ascensionGeneration"].get<std::size_t>();
    e.history = meta.value("history", std::vector<HistoryPoint>{});
    e.key = meta.value("key", std::string{});
    repo->insert(std::move(e));
  }
  return repo;
}

HopSilo::HopSilo(std::size_t capacity, std::optional<std::filesystem::path> file) : capacity_(std::max<std::size_t>(capacity, 1)) {
  if (file) {
    const bool fresh = !std::filesystem::exists(*file) || std::filesystem::file_size(*file) == 0;
    out_.emplace(*file, std::ios::binary | std::ios::app);
    if (!*out_) throw Error("cannot open silo file " + file->string());
    if (fresh) *out_ << kSiloHeader << "\n";
  }
}

void HopSilo::append(std::span<const HopSample> records) {
  std::vector<std::string> encoded;
  if (out_) {
    encoded.reserve(records.size());
    for (const auto& r : records) encoded.push_back(to_json(r).dump());
  }
  std::lock_guard lock(mutex_);
  for (const auto& r : records) {
    buffer_.push_back(r);
    ++labels_[static_cast<std::size_t>(label_index(r.label))];
  }
  appended_ += records.size();
  while (buffer_.size() > capacity_) {
    buffer_.pop_front();
    ++dropped_;
  }
  if (out_) {
    for (const auto& s : encoded) {
      const auto n = static_cast<std::uint32_t>(s.size());
      const char prefix[4] = {static_cast<char>(n & 0xff), static_cast<char>((n >> 8) & 0xff),
                              static_cast<char>((n >> 16) & 0xff), static_cast<char>((n >> 24) & 0xff)};
      out_->write(prefix, 4);
      out_->write(s.data(), static_cast<std::streamsize>(s.size()));
    }
    out_->flush();
  }
}

std::vector<HopSample> HopSilo::records() const {
  std::lock_guard lock(mutex_);
  return {buffer_.begin(), buffer_.end()};
}

std::vector<HopSample> HopSilo::since(std::uint64_t cursor) const {
  std::lock_guard lock(mutex_);
  const std::uint64_t first = appended_ - buffer_.size();
  const std::uint64_t start = std::max(cursor, first);
  if (start >= appended_) return {};
  return {buffer_.begin() + static_cast<std::ptrdiff_t>(start - first), buffer_.end()};
}

std::size_t HopSilo::size() const {
  std::lock_guard lock(mutex_);
  return buffer_.size();
}

std::uint64_t HopSilo::total_appended() const {
  std::lock_guard lock(mutex_);
  return appended_;
}

std::uint64_t HopSilo::dropped() const {
  std::lock_guard lock(mutex_);
  return dropped_;
}

std::array<std::uint64_t, 3> HopSilo::label_counts() const {
  std::lock_guard lock(mutex_);
  return labels_;
}

std::vector<HopSample> HopSilo::read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kSiloHeader) throw ParseError("not a silo file: " + path.string());
  std::vector<HopSample> out;
  unsigned char prefix[4];
  while (in.read(reinterpret_cast<char*>(prefix), 4)) {
    const std::uint32_t n = prefix[0] | (prefix[1] << 8) | (prefix[2] << 16) | (static_cast<std::uint32_t>(prefix[3]) << 24);
    std::string body(n, '\0');
    if (!in.read(body.data(), n)) throw ParseError("truncated silo record");
    out.push_back(hop_sample_from_json(nlohmann::json::parse(body)));
  }
  return out;
}

}  // namespace hopper
