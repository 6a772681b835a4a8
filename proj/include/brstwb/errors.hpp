#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace brstwb {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RosterMismatch : public Error {
public:
    RosterMismatch() : Error("operands live over different variable rosters") {}
};

class InhomogeneousError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class SyntaxError : public ParseError {
public:
    using ParseError::ParseError;
};

class UnknownIdentifier : public ParseError {
public:
    UnknownIdentifier(const std::string& name, std::size_t position)
        : ParseError("unknown identifier '" + name + "'", position), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class PointNotOnSurface : public Error {
public:
    using Error::Error;
};

class InvolutivityViolation : public Error {
public:
    using Error::Error;
};

class PairingError : public Error {
public:
    using Error::Error;
};

class JetOrderOverflow : public Error {
public:
    using Error::Error;
};

class InvalidDegree : public Error {
public:
    using Error::Error;
};

class MasterViolation : public Error {
public:
    using Error::Error;
};

// Carries the part of the master residual the ansatz could not absorb.
class AnsatzExhausted : public Error {
public:
    AnsatzExhausted(int rdeg, std::string residual)
        : Error("no correction of resolution degree " + std::to_string(rdeg + 1) +
                " within the degree bound; unresolved residual at degree " +
                std::to_string(rdeg) + ": " + residual),
          rdeg_(rdeg), residual_(std::move(residual)) {}
    int rdeg() const noexcept { return rdeg_; }
    const std::string& residual() const noexcept { return residual_; }

private:
    int rdeg_;
    std::string residual_;
};

} // namespace brstwb
