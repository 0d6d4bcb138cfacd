#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "pentabell/bks.hpp"
#include "pentabell/rational.hpp"
#include "pentabell/rng.hpp"

namespace pentabell {

enum class Party { alice, bob };

// Exact 64-component state of the six qubits, qubit 1 most significant;
// Alice holds qubits 1-3 and Bob qubits 4-6.  Amplitudes stay primitive
// (collective gcd 1), so probabilities are exact rationals of the integer
// quadratic forms.
struct SixQubitState {
  std::array<int64_t, 64> amplitudes{};

  int64_t norm_sq() const;
  bool is_zero() const;
  void reduce();  // divide by the collective gcd
};

// The eight-term state sum_xyz |xyz>|xyz> with unit amplitudes.
SixQubitState prepare_psi();

// True iff the state equals, under the qubit pairing (1,4)(2,5)(3,6), the
// threefold tensor product of |00>+|11>; exact integer comparison after
// canonical scaling.
bool factor_check(const SixQubitState& s);

// Extends a three-qubit observable by identity on the other party's qubits.
PauliWord extend_to_six(const PauliWord& three_qubit_word, Party party);

// Exact probability of the +1 outcome: <v|(I+M)/2|v> / <v|v>.
Rational probability_plus(const SixQubitState& s, const PauliWord& six_qubit_word);

// Projects onto the sign eigenspace via v +- Mv and re-reduces.  Returns the
// exact branch probability; throws std::logic_error when the branch has
// probability zero.
Rational collapse(SixQubitState& s, const PauliWord& six_qubit_word, int sign);

struct MeasurementEvent {
  int sign;
  Rational probability;  // of the branch actually taken
};

// One projective measurement: exact branch probability, seeded draw, exact
// collapse.
MeasurementEvent measure_observable(SixQubitState& s, const PauliWord& obs3,
                                    Party party, const RandomSource& rng,
                                    uint64_t run, uint64_t event);

struct HybridOutcome {
  std::array<int, 3> signs{};
  int cell_index = 0;  // 0..7 in column order +++ .. ---
  int ray_id = -1;
  int label = 0;
  std::array<Rational, 3> probabilities{};
};

// Pivot measurement followed by the branch pair in row order.  Audits, in
// exact arithmetic, that the party's conditional three-qubit state equals
// the atlas ray the outcome table predicts; a mismatch throws
// std::logic_error.
HybridOutcome perform_hybrid(SixQubitState& s, Party party, const TableRow& row,
                             const Atlas& atlas, const RandomSource& rng,
                             uint64_t run, uint64_t event_base);

// Exact conditional three-qubit factor of a product state; nullopt when the
// state does not factor across the two parties.
std::optional<std::array<int64_t, 8>> conditional_state(const SixQubitState& s,
                                                        Party party);

// Analytic outcome distribution of a row on a given state: the probability
// of each of the eight cells as a product of exact branch probabilities.
std::array<Rational, 8> outcome_distribution(const SixQubitState& s, Party party,
                                             const TableRow& row, const Pentagram& p);

struct ChoicePolicy {
  enum class Kind { uniform, fixed, round_robin };
  Kind kind = Kind::uniform;
  int fixed_alice = 0;
  int fixed_bob = 0;

  static ChoicePolicy uniform() { return {Kind::uniform, 0, 0}; }
  static ChoicePolicy fixed(int alice_row, int bob_row) {
    return {Kind::fixed, alice_row, bob_row};
  }
  static ChoicePolicy round_robin() { return {Kind::round_robin, 0, 0}; }
};

struct RunRecord {
  int run_index = 0;
  int alice_row = 0;
  int bob_row = 0;
  HybridOutcome alice;
  HybridOutcome bob;
  // Bob's conditional state right after Alice's hybrid equalled Alice's
  // outcome ray, checked in exact arithmetic during the run.
  bool twin_state_verified = false;
};

// Each run starts from a fresh prepared state; Alice's three measurements
// are applied before Bob's.  Choices come from per-run substreams drawn
// before any measurement.  Throws std::invalid_argument for trials < 1.
std::vector<RunRecord> run_experiment(const Atlas& atlas, const MeasurementTable& table,
                                      int trials, ChoicePolicy policy, uint64_t seed);

struct CorrelationReport {
  int total_runs = 0;
  int same_choice_runs = 0;
  int same_choice_mismatches = 0;
  int twin_state_audits = 0;         // runs with the exact state audit passed
  int common_label_checks = 0;       // (run, shared label) pairs examined
  int common_label_violations = 0;   // one party saw the label, the other did not
  std::array<int, 8> alice_cell_counts{};
  std::array<int, 8> bob_cell_counts{};
  double max_cell_frequency_deviation = 0.0;  // max |f - 1/8| over both parties

  bool clean() const {
    return same_choice_mismatches == 0 && common_label_violations == 0 &&
           twin_state_audits == total_runs;
  }
};

CorrelationReport verify_twin_collapse(const std::vector<RunRecord>& records,
                                       const MeasurementTable& table);

struct KeyMaterial {
  std::vector<int> sifted_runs;  // run indices with equal choices
  std::string alice_letters;     // octal digits, one per sifted run
  std::string bob_letters;
};

// Runs where both parties chose the same row; the letter is the outcome's
// cell index 0-7.
KeyMaterial sift_key(const std::vector<RunRecord>& records);

struct KeyReport {
  int revealed_count = 0;
  int mismatches = 0;
  std::vector<int> revealed_positions;  // indices into the sifted sequence
  std::string final_key;                // alice letters minus the revealed sample
};

// Reveals floor(fraction * key length) positions chosen by a dedicated
// seeded substream, compares the parties' letters there, and removes the
// sample from the key.
KeyReport verify_key(const KeyMaterial& key, double reveal_fraction,
                     const RandomSource& rng);

}  // namespace pentabell
