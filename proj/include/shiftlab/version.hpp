#ifndef SHIFTLAB_VERSION_HPP
#define SHIFTLAB_VERSION_HPP

#define SHIFTLAB_VERSION_STRING "1.0.0"

namespace shiftlab {

inline const char* artifact_version() { return SHIFTLAB_VERSION_STRING; }

} // namespace shiftlab

#endif
