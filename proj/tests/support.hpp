#ifndef ARBOR_TESTS_SUPPORT_HPP
#define ARBOR_TESTS_SUPPORT_HPP

#include <arbor/error.hpp>
#include <arbor/group.hpp>

#include <doctest.h>

#include <string>
#include <vector>

// Rational == int does not compile to anything sane in some boost
// versions, so comparisons always go through R().
inline arbor::Rational R(long long n, long long d = 1) { return arbor::Rational(n, d); }

inline std::vector<arbor::Word> words(const arbor::Presentation& p, std::initializer_list<const char*> ws) {
  std::vector<arbor::Word> out;
  for (const char* w : ws) out.push_back(p.parse_word(w));
  return out;
}

#define CHECK_ERROR(expr, ecode)                                   \
  do {                                                             \
    bool thrown_ = false;                                          \
    try {                                                          \
      (void)(expr);                                                \
    } catch (const arbor::Error& e_) {                             \
      thrown_ = true;                                              \
      CHECK_MESSAGE(e_.code() == arbor::ErrorCode::ecode, e_.what()); \
    }                                                              \
    CHECK_MESSAGE(thrown_, "expected " #ecode);                    \
  } while (0)

#endif
