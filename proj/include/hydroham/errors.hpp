#ifndef HYDROHAM_ERRORS_HPP
#define HYDROHAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hydroham {

// All recoverable failures carry a stable kind tag so the CLI can map them
// to exit codes and reports without string-matching messages.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& m) : Error("DivisionByZero", m) {}
};
struct SyntaxError : Error {
    SyntaxError(std::size_t offset, const std::string& m)
        : Error("SyntaxError", "syntax error at byte " + std::to_string(offset) + ": " + m),
          offset(offset) {}
    std::size_t offset;
};
struct UnknownVariable : Error {
    explicit UnknownVariable(const std::string& m) : Error("UnknownVariable", m) {}
};
struct JetOrderExceeded : Error {
    explicit JetOrderExceeded(const std::string& m) : Error("JetOrderExceeded", m) {}
};
struct InhomogeneousInput : Error {
    explicit InhomogeneousInput(const std::string& m) : Error("InhomogeneousInput", m) {}
};
struct NotHamiltonian : Error {
    explicit NotHamiltonian(const std::string& m) : Error("NotHamiltonian", m) {}
};
struct UnsupportedDegree : Error {
    explicit UnsupportedDegree(const std::string& m) : Error("UnsupportedDegree", m) {}
};
struct SingularPencil : Error {
    explicit SingularPencil(const std::string& m) : Error("SingularPencil", m) {}
};
struct DegenerateTensor : Error {
    explicit DegenerateTensor(const std::string& m) : Error("DegenerateTensor", m) {}
};
struct InconsistentVQ : Error {
    explicit InconsistentVQ(const std::string& m) : Error("InconsistentVQ", m) {}
};
struct NotClosed : Error {
    explicit NotClosed(const std::string& m) : Error("NotClosed", m) {}
};
struct NonIntegrable : Error {
    explicit NonIntegrable(const std::string& m) : Error("NonIntegrable", m) {}
};
struct NonPolynomial : Error {
    explicit NonPolynomial(const std::string& m) : Error("NonPolynomial", m) {}
};
struct NotInverse : Error {
    explicit NotInverse(const std::string& m) : Error("NotInverse", m) {}
};
struct PreconditionFailed : Error {
    explicit PreconditionFailed(const std::string& m) : Error("PreconditionFailed", m) {}
};
struct PDEViolation : Error {
    explicit PDEViolation(const std::string& m) : Error("PDEViolation", m) {}
};
struct ManifestError : Error {
    explicit ManifestError(const std::string& m) : Error("ManifestError", m) {}
};

} // namespace hydroham

#endif
