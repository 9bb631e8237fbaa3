#pragma once

#include <stdexcept>
#include <string>

namespace mami {

// Error taxonomy shared by all modules. Everything derives from Error so
// callers can catch broadly, and the CLI can map specific types to exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& what) : Error(what) {}
};

// A pivot collapsed during factorization; the matrix is numerically
// rank-deficient (ill-conditioned channel realization).
struct RankDeficient : Error {
    explicit RankDeficient(const std::string& what) : Error(what) {}
};

struct SingularDiagonal : Error {
    explicit SingularDiagonal(const std::string& what) : Error(what) {}
};

struct NoRoot : Error {
    explicit NoRoot(const std::string& what) : Error(what) {}
};

struct NoPeak : Error {
    explicit NoPeak(const std::string& what) : Error(what) {}
};

struct ZeroPilot : Error {
    explicit ZeroPilot(const std::string& what) : Error(what) {}
};

struct InvalidRoot : Error {
    explicit InvalidRoot(const std::string& what) : Error(what) {}
};

struct BufferOverrun : Error {
    explicit BufferOverrun(const std::string& what) : Error(what) {}
};

struct Infeasible : Error {
    explicit Infeasible(const std::string& what) : Error(what) {}
};

struct NoTurnaround : Error {
    explicit NoTurnaround(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace mami
