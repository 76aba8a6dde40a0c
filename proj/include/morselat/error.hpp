#pragma once
#include <stdexcept>
#include <string>

namespace morselat {

enum class ErrorKind {
    NotReflexive,
    NotAntisymmetric,
    NotTransitive,
    UnknownElement,
    TooLarge,
    NotADownSet,
    NotJoinIrreducible,
    NotAHom,
    NotALattice,
    InvalidOrbit,
    NotForwardInvariant,
    NotAnAttractor,
    NotARepeller,
    ConditionerMissing,
    ObstructionFound,
    SectionInconsistent,
    TopNotUnique,
    NotAnEmbedding,
    LiftCheckFailed,
    BoundExceeded,
    ParseError,
    ImageOutOfDomain,
    NotARepellingBlock,
    NotASublattice,
    Unsupported,
    Io,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string detail)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + detail),
          kind_(kind), detail_(std::move(detail)) {}
    ErrorKind kind() const { return kind_; }
    const std::string& detail() const { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace morselat
