#pragma once

#include <stdexcept>
#include <string>

namespace codelex {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed input files, bad wire formats.
class InputError : public Error {
 public:
  using Error::Error;
};

// Out-of-range or inconsistent caller-supplied parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class NotInVocabularyError : public Error {
 public:
  explicit NotInVocabularyError(const std::string& word)
      : Error("word not in vocabulary: " + word), word_(word) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

// Cosine against an all-zero vector is undefined.
class DegenerateVectorError : public Error {
 public:
  using Error::Error;
};

// Agreement coefficient undefined (zero expected disagreement).
class DegenerateMatrixError : public Error {
 public:
  using Error::Error;
};

}  // namespace codelex
