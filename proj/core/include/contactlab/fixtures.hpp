#pragma once

#include <span>
#include <string_view>

namespace contactlab {

// A built-in manifold described in the config format.
struct Fixture {
  std::string_view name;
  std::string_view summary;
  std::string_view config;
};

std::span<const Fixture> builtin_fixtures();

// nullptr when no fixture has that name.
const Fixture* find_fixture(std::string_view name);

}  // namespace contactlab
