// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blindsim/cqstate.hpp"
#include "blindsim/pattern_run.hpp"
#include "blindsim/prep.hpp"

namespace blindsim {

struct AliceSecrets {
  std::vector<Angle> theta;    // per vertex; output column unused
  std::vector<int> r;          // per vertex; output column unused
  std::vector<int> input_pad;  // X-pad bits for the input column
};

struct BobBehavior {
  enum class Mode { Honest, Deviant };
  Mode mode = Mode::Honest;
  // deviant: channel applied to every qubit in Bob's register before entangling
  std::optional<KrausChannel> prep_channel;
  // deviant: branch maps {E^0, E^1} replacing the honest measurement of a
  // vertex; Bob reports the realized branch.  Pair must sum to a CPTP map.
  std::map<int, std::array<KrausChannel, 2>> round_branches;
  bool valid(double tol = 1e-9) const;
};

struct TranscriptEvent {
  enum class Kind { Prep, Delta, Outcome, Output } kind;
  int site = -1;
  Angle angle;  // Delta only
  int bit = 0;  // Outcome only
};

struct Transcript {
  std::vector<TranscriptEvent> events;
  std::string serialize() const;
  std::vector<int> reported_bits() const;  // outcome events in order
};

// convenience for view analyses: a transcript that only fixes Bob's reports
Transcript transcript_of_reports(const std::vector<int>& bits);

// delta = phi' + theta + r*pi (mod 2 pi)
Angle delta_angle(const Angle& phi_corrected, const Angle& theta, int r);

// per-site preparation backend: one (Alice angle, Bob system) pair per call
using PrepFn = std::function<PrepOutcome(Rng&)>;
PrepFn ideal_prep();                                // |+_theta>, theta uniform
PrepFn family_prep(const PrepStateFamily& fam);     // corrupt rsp_b backend
PrepFn channel_prep(const KrausChannel& e);         // rsp_s backend

struct UbqcResult {
  CMat output;                // density matrix on the output column
  Transcript transcript;
  AliceSecrets secrets;
  std::vector<int> reported;  // Bob's reported bits per measured vertex
};

// Protocol 1 with quantum input: the input column is one-time padded with
// Z(theta) X^i; interior columns come from the prep backend; the output
// column starts as |+>.  Honest Bob yields pattern_unitary(pat) * input.
UbqcResult run_ubqc(const BrickworkPattern& pat, const CMat& input,
                    const PrepFn& prep, const BobBehavior& bob, Rng& rng);

// exact classical-output view state: enumerate Alice's (theta, r) secrets on
// the first `num_sites` vertices (column-major; all vertices when -1), with
// Bob's reported bits fixed by the transcript.  Labels are delta strings.
CQState bob_view(const BrickworkPattern& pat, const Transcript& tr,
                 const PrepStateFamily& fam, int num_sites = -1);

}  // namespace blindsim
