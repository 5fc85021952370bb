#pragma once

namespace laxjac {

/// Serial keeps the reference loop; Parallel fans the same per-slot work out over OpenMP
/// threads. Each slot is computed independently, so both give bitwise-identical output.
enum class ExecPolicy { Serial, Parallel };

}  // namespace laxjac
