#pragma once

#include <array>
#include <string>

#include "trustclust/trustclust.hpp"

namespace tc_test {

using namespace trustclust;

inline ParticipantRecord make_record(const std::string& id, DriveType drive, const std::array<double, 10>& trust,
                                     const std::array<bool, 10>& takeover = {}) {
  ParticipantRecord r;
  r.participant_id = id;
  r.drive_type = drive;
  r.age = 30;
  r.gender = Gender::Male;
  r.driving_style = DrivingStyle::Aggressive;
  r.prior_experience = 4;
  for (int i = 0; i < 10; ++i) r.events[i] = {i + 1, trust[i], takeover[i]};
  return r;
}

inline std::array<double, 10> constant_trust(double v) {
  std::array<double, 10> t;
  t.fill(v);
  return t;
}

template <class Fn>
ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected trustclust::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace tc_test
