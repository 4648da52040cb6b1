#ifndef UE_ERRORS_H_
#define UE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ue {

// Bad input: unknown names, malformed parameters, non-simplex vectors.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A full-tree computation needed more nodes than the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called on a state where it is not defined
// (e.g. legal_actions on a terminal).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The requested information state does not occur in the game tree.
class UnknownInfoState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The information state occurs in the tree but chance and the other players
// never reach it, so no posterior exists.
class UnreachableInfoState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ue

#endif  // UE_ERRORS_H_
