#include "core/ints.hpp"
namespace hermlat {}
