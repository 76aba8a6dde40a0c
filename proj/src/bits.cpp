#include "morselat/bits.hpp"
#include "morselat/error.hpp"

namespace morselat {

std::string mask_str(Mask m, const std::vector<std::string>& labels) {
    std::string s = "{";
    bool first = true;
    for (int i : members(m)) {
        if (!first) s += ",";
        first = false;
        s += i < static_cast<int>(labels.size()) ? labels[i] : std::to_string(i);
    }
    return s + "}";
}

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotReflexive: return "NotReflexive";
        case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
        case ErrorKind::NotTransitive: return "NotTransitive";
        case ErrorKind::UnknownElement: return "UnknownElement";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::NotADownSet: return "NotADownSet";
        case ErrorKind::NotJoinIrreducible: return "NotJoinIrreducible";
        case ErrorKind::NotAHom: return "NotAHom";
        case ErrorKind::NotALattice: return "NotALattice";
        case ErrorKind::InvalidOrbit: return "InvalidOrbit";
        case ErrorKind::NotForwardInvariant: return "NotForwardInvariant";
        case ErrorKind::NotAnAttractor: return "NotAnAttractor";
        case ErrorKind::NotARepeller: return "NotARepeller";
        case ErrorKind::ConditionerMissing: return "ConditionerMissing";
        case ErrorKind::ObstructionFound: return "ObstructionFound";
        case ErrorKind::SectionInconsistent: return "SectionInconsistent";
        case ErrorKind::TopNotUnique: return "TopNotUnique";
        case ErrorKind::NotAnEmbedding: return "NotAnEmbedding";
        case ErrorKind::LiftCheckFailed: return "LiftCheckFailed";
        case ErrorKind::BoundExceeded: return "BoundExceeded";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ImageOutOfDomain: return "ImageOutOfDomain";
        case ErrorKind::NotARepellingBlock: return "NotARepellingBlock";
        case ErrorKind::NotASublattice: return "NotASublattice";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace morselat
