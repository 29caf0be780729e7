#pragma once

#include <stdexcept>
#include <string>

namespace g2cm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define G2CM_ERROR(NAME)                        \
    struct NAME : Error {                       \
        using Error::Error;                     \
        NAME() : Error(#NAME) {}                \
    }

// field construction / arithmetic
G2CM_ERROR(EvenCharacteristic);
G2CM_ERROR(CompositeModulus);
G2CM_ERROR(DegreeCapExceeded);
G2CM_ERROR(CharacteristicTooLarge);
G2CM_ERROR(DivisionByZero);
G2CM_ERROR(NotCoprime);
G2CM_ERROR(IncompatibleTower);
G2CM_ERROR(FieldMismatch);

// curves and divisors
G2CM_ERROR(NonSquarefree);
G2CM_ERROR(BadDegree);
G2CM_ERROR(SamplingBudgetExceeded);
G2CM_ERROR(EnumerationBoundExceeded);

// zeta
G2CM_ERROR(InconsistentCounts);
G2CM_ERROR(BadPrime);

// torsion
G2CM_ERROR(CapExceeded);
G2CM_ERROR(RamifiedCase);
G2CM_ERROR(NoCandidateWorked);
G2CM_ERROR(NotInSpan);
G2CM_ERROR(DlogFailure);
G2CM_ERROR(CharpolyMismatch);

// pairing
G2CM_ERROR(SupportCollision);
G2CM_ERROR(NotTorsion);
G2CM_ERROR(RootsOfUnityMissing);
G2CM_ERROR(SupportExhausted);
G2CM_ERROR(PairingFailure);

// cm fields
struct NotAQuarticCMField : Error {
    std::string cause;
    explicit NotAQuarticCMField(std::string c)
        : Error("NotAQuarticCMField: " + c), cause(std::move(c)) {}
};

#undef G2CM_ERROR

}  // namespace g2cm
