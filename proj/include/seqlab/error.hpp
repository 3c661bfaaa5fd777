#ifndef SEQLAB_ERROR_HPP
#define SEQLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace seqlab {

// Exit-code contract: input errors map to 1, solver failures to 2.
enum class ErrorKind { input, solver };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline Error input_error(const std::string& what) { return Error(ErrorKind::input, what); }
inline Error solver_error(const std::string& what) { return Error(ErrorKind::solver, what); }

} // namespace seqlab

#endif
