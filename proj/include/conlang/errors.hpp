#pragma once

#include <stdexcept>
#include <string>

namespace conlang {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientCodePoints : Error {
    using Error::Error;
};
struct MalformedCiphertext : Error {
    using Error::Error;
};
struct UnbalancedDelimiters : Error {
    using Error::Error;
};
struct EmptyEncryptSpan : Error {
    using Error::Error;
};
struct DuplicateId : Error {
    using Error::Error;
};
struct IoFailure : Error {
    using Error::Error;
};
struct MalformedFile : Error {
    using Error::Error;
};
struct EmptyParaphraseBank : Error {
    using Error::Error;
};
struct MissingBlock : Error {
    using Error::Error;
};
struct CountMismatch : Error {
    using Error::Error;
};
struct InsufficientResources : Error {
    using Error::Error;
};
struct DegenerateSamples : Error {
    using Error::Error;
};
struct MisalignedConditions : Error {
    using Error::Error;
};
struct InconsistentGrouping : Error {
    using Error::Error;
};
struct ConfigurationMissing : Error {
    using Error::Error;
};
struct MalformedLog : Error {
    using Error::Error;
};

}  // namespace conlang
