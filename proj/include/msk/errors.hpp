#pragma once

#include <stdexcept>

namespace msk {

// Common base so callers can catch toolkit failures in one clause.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define MSK_ERROR_TYPE(Name) \
  struct Name : Error {      \
    using Error::Error;      \
  }

// matrix helpers
MSK_ERROR_TYPE(NotHermitian);
MSK_ERROR_TYPE(NotPSD);
MSK_ERROR_TYPE(NotStrictContraction);
MSK_ERROR_TYPE(Singular);
MSK_ERROR_TYPE(NotProjection);

// grid functions
MSK_ERROR_TYPE(ShapeMismatch);
MSK_ERROR_TYPE(BadShape);
MSK_ERROR_TYPE(BadIndex);
MSK_ERROR_TYPE(DegreeOverflow);

// inner functions and model spaces
MSK_ERROR_TYPE(BadDegree);
MSK_ERROR_TYPE(ZeroTooLarge);
MSK_ERROR_TYPE(NotInner);
MSK_ERROR_TYPE(NotPure);
MSK_ERROR_TYPE(PointTooClose);
MSK_ERROR_TYPE(InfiniteDimensional);
MSK_ERROR_TYPE(DeficientSpan);

// operator-level
MSK_ERROR_TYPE(DimMismatch);
MSK_ERROR_TYPE(NotUnitary);
MSK_ERROR_TYPE(NotAnalytic);

// scenario / serialization input validation
MSK_ERROR_TYPE(SchemaError);

#undef MSK_ERROR_TYPE

}  // namespace msk
