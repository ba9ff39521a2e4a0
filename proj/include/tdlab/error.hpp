#pragma once

#include <stdexcept>
#include <string>

namespace tdlab {

enum class ErrKind {
    MissingComposite,
    AssociativityViolation,
    IdentityViolation,
    SizeGuardExceeded,
    ParseError,
    NotALattice,
    AdjunctionViolation,
    NotJoinDense,
    NotFullyFaithful,
    VerificationFailure,
    InterpolationFailure,
    InternalInconsistency,
    InvalidInput,
};

const char* err_kind_name(ErrKind k);

class Error : public std::runtime_error {
public:
    Error(ErrKind kind, std::string msg)
        : std::runtime_error(std::string(err_kind_name(kind)) + ": " + msg),
          kind_(kind) {}
    ErrKind kind() const { return kind_; }

private:
    ErrKind kind_;
};

// Size guards. Every downstream algorithm is exponential in the worst case,
// so overruns are hard errors rather than silent truncation.
struct Limits {
    int max_objects = 64;
    int max_arrows = 4096;
    int max_poset_for_downsets = 20;     // |P| bound before enumerating Dn(P)
    long long max_downsets = 1 << 20;    // materialized down-set count
    long long max_families = 100000000;  // unfiltered family count in nat-trans/end enumeration
    long long max_ideals = 4096;         // enumerated arrow ideals
};

inline const Limits& default_limits() {
    static const Limits l{};
    return l;
}

} // namespace tdlab
