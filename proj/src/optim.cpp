#include "infodecomp/optim.hpp"

namespace infodecomp {

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::upper:
      return "upper";
    case BoundKind::lower:
      return "lower";
    case BoundKind::exact:
      return "exact";
  }
  return "unknown";
}

}  // namespace infodecomp
