#pragma once

#include "vcsim/core/error.hpp"

namespace vcsim::store {

enum class StoreErrc { BadFilter, NotFound, DuplicateEntry, UnknownEntry, BadValue, BadSnapshot };
using StoreError = Error<StoreErrc>;

} // namespace vcsim::store
