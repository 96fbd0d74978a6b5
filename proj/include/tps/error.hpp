#pragma once

#include <stdexcept>
#include <string>

namespace tps {

// Base for every error the library reports. Messages name the file, line,
// word or parameter that caused the failure.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class OutOfVocabulary : public Error {
public:
    explicit OutOfVocabulary(const std::string& word)
        : Error("word not in vocabulary: '" + word + "'"), word_(word) {}

    const std::string& word() const noexcept { return word_; }

private:
    std::string word_;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace tps
