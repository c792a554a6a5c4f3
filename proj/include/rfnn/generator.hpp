#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "rfnn/model.hpp"
#include "rfnn/paramgen.hpp"
#include "rfnn/rae.hpp"

namespace rfnn {

struct RaemConfig {
  RaemVariant variant = Raem1{};
  SolverConfig solver;
};

/// Selects how hidden parameters are drawn.
using GeneratorConfig = std::variant<RamConfig, RalphamConfig, RaemConfig>;

/// Hidden layer for any generator. `x_train` supplies anchors and, for the
/// autoencoder variants, the reconstruction target.
HiddenLayer generate_hidden_layer(const GeneratorConfig& cfg,
                                  const Matrix& x_train, std::size_t m,
                                  const RngStream& rng);

/// Families addressed by name in configs and grid searches.
enum class MethodFamily { ram, ralpham, raem1, raem2, raem3, raem4, raem5 };

MethodFamily parse_family(const std::string& name);
std::string family_name(MethodFamily family);
MethodFamily family_of(const GeneratorConfig& cfg);

/// Whether the family has a tunable interval bound (u, alpha_max or u_ae).
bool family_has_interval(MethodFamily family);

/// Generator for `family` with its interval hyperparameter set to
/// `interval` (u for RaM, alpha_max in degrees for RalphaM with alpha_min = 0,
/// u_ae for RAEM1). Ignored by families without an interval.
GeneratorConfig make_generator(MethodFamily family, double interval,
                               const AnchorPolicy& anchor = RandomTrainingPoint{},
                               const SolverConfig& solver = {});

/// Interval hyperparameter of `cfg`, if it has one.
std::optional<double> generator_interval(const GeneratorConfig& cfg);

}  // namespace rfnn
