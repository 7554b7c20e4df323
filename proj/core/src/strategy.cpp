#include "iraug/strategy.hpp"

#include <charconv>
#include <cmath>

#include "iraug/error.hpp"
#include "iraug/relevance.hpp"

namespace iraug {

std::string_view to_string(StrategyKind k) noexcept {
  switch (k) {
    case StrategyKind::None: return "none";
    case StrategyKind::RandomUnder: return "ru";
    case StrategyKind::RandomOver: return "ro";
    case StrategyKind::Wercs: return "wercs";
    case StrategyKind::GaussianNoise: return "gn";
    case StrategyKind::Smoter: return "smoter";
    case StrategyKind::Smogn: return "smogn";
    case StrategyKind::CartGenIR: return "cartgen-ir";
  }
  return "none";
}

StrategyKind parse_strategy(std::string_view name) {
  for (auto k : {StrategyKind::None, StrategyKind::RandomUnder, StrategyKind::RandomOver, StrategyKind::Wercs,
                 StrategyKind::GaussianNoise, StrategyKind::Smoter, StrategyKind::Smogn, StrategyKind::CartGenIR})
    if (to_string(k) == name) return k;
  throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + std::string(name) + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string StrategyConfig::label() const {
  const std::string mode_s = "mode=" + std::string(to_string(mode));
  switch (kind) {
    case StrategyKind::None: return "None";
    case StrategyKind::RandomUnder: return "RU(" + mode_s + ")";
    case StrategyKind::RandomOver: return "RO(" + mode_s + ")";
    case StrategyKind::Wercs: return "WERCS(po=" + format_number(over) + ",pu=" + format_number(under) + ")";
    case StrategyKind::GaussianNoise: return "GN(" + mode_s + ",delta=" + format_number(delta) + ")";
    case StrategyKind::Smoter: return "SMOTER(" + mode_s + ",k=" + std::to_string(k) + ")";
    case StrategyKind::Smogn:
      return "SMOGN(" + mode_s + ",delta=" + format_number(delta) + ",k=" + std::to_string(k) + ")";
    case StrategyKind::CartGenIR:
      return "CARTGen-IR(alpha=" + format_number(alpha) + ",eta=" + format_number(eta) +
             ",density=" + std::string(to_string(density)) + ",delta=" + format_number(delta) + ")";
  }
  return "None";
}

CartGenParams cartgen_params(const StrategyConfig& cfg, std::uint64_t seed) {
  CartGenParams params;
  params.alpha = cfg.alpha;
  params.eta = cfg.eta;
  params.density = cfg.density;
  params.delta = cfg.delta;
  params.cart = cfg.cart;
  params.seed = seed;
  return params;
}

StrategyOutput apply_strategy(const StrategyConfig& cfg, const Dataset& train, std::uint64_t seed) {
  StrategyOutput out;
  if (cfg.kind == StrategyKind::CartGenIR) {
    auto aug = cartgen_ir(train, cartgen_params(cfg, seed));
    out.data = std::move(aug.combined);
    out.provenance = std::move(aug.provenance);
    return out;
  }
  if (cfg.kind == StrategyKind::None) {
    out.data = train;
  } else {
    Rng rng(seed);
    const auto rel = build_relevance(train.target());
    switch (cfg.kind) {
      case StrategyKind::RandomUnder: out.data = random_under(train, rel, cfg.mode, rng, cfg.threshold); break;
      case StrategyKind::RandomOver: out.data = random_over(train, rel, cfg.mode, rng, cfg.threshold); break;
      case StrategyKind::Wercs: out.data = wercs(train, rel, cfg.over, cfg.under, rng); break;
      case StrategyKind::GaussianNoise:
        out.data = gaussian_noise(train, rel, cfg.mode, cfg.delta, rng, cfg.threshold);
        break;
      case StrategyKind::Smoter: out.data = smoter(train, rel, cfg.mode, cfg.k, rng, cfg.threshold); break;
      case StrategyKind::Smogn: out.data = smogn(train, rel, cfg.mode, cfg.delta, cfg.k, rng, cfg.threshold); break;
      default: break;
    }
  }
  out.provenance.assign(out.data.n_rows(), Provenance::Original);
  return out;
}

}  // namespace iraug
