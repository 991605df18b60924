#pragma once

namespace sdn5g {

// Serial is the reference path; OpenMP must produce bit-identical results.
enum class Exec { Serial, OpenMP };

int max_threads();

} // namespace sdn5g
