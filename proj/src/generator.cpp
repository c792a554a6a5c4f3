#include "rfnn/generator.hpp"

#include <array>
#include <utility>

#include "rfnn/error.hpp"

namespace rfnn {
namespace {

constexpr std::array<std::pair<MethodFamily, const char*>, 7> kFamilyNames{{
    {MethodFamily::ram, "ram"},
    {MethodFamily::ralpham, "ralpham"},
    {MethodFamily::raem1, "raem1"},
    {MethodFamily::raem2, "raem2"},
    {MethodFamily::raem3, "raem3"},
    {MethodFamily::raem4, "raem4"},
    {MethodFamily::raem5, "raem5"},
}};

}  // namespace

HiddenLayer generate_hidden_layer(const GeneratorConfig& cfg,
                                  const Matrix& x_train, std::size_t m,
                                  const RngStream& rng) {
  const Hypercube cube = input_hypercube(x_train);
  if (const auto* ram = std::get_if<RamConfig>(&cfg)) {
    return generate_ram(*ram, x_train, cube, m, rng);
  }
  if (const auto* ralpham = std::get_if<RalphamConfig>(&cfg)) {
    return generate_ralpham(*ralpham, x_train, cube, m, rng);
  }
  const auto& raem = std::get<RaemConfig>(cfg);
  return raem_hidden_layer(raem.variant, x_train, cube, m, rng, raem.solver);
}

MethodFamily parse_family(const std::string& name) {
  for (const auto& [family, label] : kFamilyNames) {
    if (name == label) return family;
  }
  if (name == "raem") return MethodFamily::raem1;
  throw InvalidConfigError("unknown method family '" + name + "'");
}

std::string family_name(MethodFamily family) {
  for (const auto& [f, label] : kFamilyNames) {
    if (f == family) return label;
  }
  return "unknown";
}

MethodFamily family_of(const GeneratorConfig& cfg) {
  if (std::holds_alternative<RamConfig>(cfg)) return MethodFamily::ram;
  if (std::holds_alternative<RalphamConfig>(cfg)) return MethodFamily::ralpham;
  switch (raem_number(std::get<RaemConfig>(cfg).variant)) {
    case 1: return MethodFamily::raem1;
    case 2: return MethodFamily::raem2;
    case 3: return MethodFamily::raem3;
    case 4: return MethodFamily::raem4;
    default: return MethodFamily::raem5;
  }
}

bool family_has_interval(MethodFamily family) {
  return family == MethodFamily::ram || family == MethodFamily::ralpham ||
         family == MethodFamily::raem1;
}

GeneratorConfig make_generator(MethodFamily family, double interval,
                               const AnchorPolicy& anchor,
                               const SolverConfig& solver) {
  switch (family) {
    case MethodFamily::ram:
      return RamConfig{interval, anchor};
    case MethodFamily::ralpham:
      return RalphamConfig{0.0, interval, anchor};
    case MethodFamily::raem1:
      return RaemConfig{Raem1{interval, anchor}, solver};
    case MethodFamily::raem2:
      return RaemConfig{Raem2{anchor}, solver};
    case MethodFamily::raem3:
      return RaemConfig{Raem3{anchor}, solver};
    case MethodFamily::raem4:
      return RaemConfig{Raem4{}, solver};
    case MethodFamily::raem5:
      return RaemConfig{Raem5{}, solver};
  }
  throw InvalidConfigError("unknown method family");
}

std::optional<double> generator_interval(const GeneratorConfig& cfg) {
  if (const auto* ram = std::get_if<RamConfig>(&cfg)) return ram->u;
  if (const auto* ra = std::get_if<RalphamConfig>(&cfg)) return ra->alpha_max_deg;
  const auto& raem = std::get<RaemConfig>(cfg);
  if (const auto* v1 = std::get_if<Raem1>(&raem.variant)) return v1->u_ae;
  return std::nullopt;
}

}  // namespace rfnn
