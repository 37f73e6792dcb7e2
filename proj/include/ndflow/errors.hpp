#ifndef NDFLOW_ERRORS_HPP
#define NDFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ndflow {

/// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorCode : int {
    parse = 2,
    precondition = 3,
    verification = 4,
    internal = 5,
};

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

class ParseError : public Error {
   public:
    ParseError(const std::string& what, std::size_t column)
        : Error(ErrorCode::parse, what + " (column " + std::to_string(column + 1) + ")"), column_(column) {}
    explicit ParseError(const std::string& what) : Error(ErrorCode::parse, what), column_(0) {}
    std::size_t column() const noexcept { return column_; }

   private:
    std::size_t column_;
};

class PreconditionError : public Error {
   public:
    explicit PreconditionError(const std::string& what) : Error(ErrorCode::precondition, what) {}
};

class VerificationError : public Error {
   public:
    explicit VerificationError(const std::string& what) : Error(ErrorCode::verification, what) {}
};

class InternalError : public Error {
   public:
    explicit InternalError(const std::string& what) : Error(ErrorCode::internal, what) {}
};

}  // namespace ndflow

#endif
