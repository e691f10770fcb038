#pragma once

#include <stdexcept>
#include <string>

namespace nkg {

/// A claimed combinatorial property failed on concrete data. `lemma` names
/// the property, `witness` prints the offending cells.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(std::string lemma, std::string witness)
      : std::runtime_error(lemma + ": " + witness),
        lemma_(std::move(lemma)),
        witness_(std::move(witness)) {}

  const std::string& lemma() const { return lemma_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string lemma_;
  std::string witness_;
};

}  // namespace nkg
