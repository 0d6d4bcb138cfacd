#include "pentabell/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pentabell {

namespace {

// Event layout within a run's substream.
constexpr uint64_t kEventAliceChoice = 0;
constexpr uint64_t kEventBobChoice = 1;
constexpr uint64_t kEventAliceMeasureBase = 10;
constexpr uint64_t kEventBobMeasureBase = 20;
// Stream reserved for key-sample selection, clear of run indices.
constexpr uint64_t kKeySampleStream = 0xffffffff00000001ull;

std::array<int64_t, 64> apply_real_six(const PauliWord& w,
                                       const std::array<int64_t, 64>& v) {
  if (!w.has_real_matrix())
    throw std::invalid_argument("observable " + w.str() + " has a non-real matrix");
  std::array<int64_t, 64> out{};
  for (uint64_t b = 0; b < 64; ++b) {
    if (v[b] == 0) continue;
    auto [image, k] = w.act(b);
    out[image] += (k == 0) ? v[b] : -v[b];
  }
  return out;
}

}  // namespace

int64_t SixQubitState::norm_sq() const {
  int64_t n = 0;
  for (int64_t a : amplitudes) n += a * a;
  return n;
}

bool SixQubitState::is_zero() const { return norm_sq() == 0; }

void SixQubitState::reduce() {
  int64_t g = 0;
  for (int64_t a : amplitudes) g = std::gcd(g, a);
  if (g > 1)
    for (int64_t& a : amplitudes) a /= g;
}

SixQubitState prepare_psi() {
  SixQubitState s;
  for (uint64_t xyz = 0; xyz < 8; ++xyz) s.amplitudes[(xyz << 3) | xyz] = 1;
  return s;
}

bool factor_check(const SixQubitState& s) {
  if (s.is_zero()) return false;
  // Tensor of |00>+|11> on the pairs (1,4), (2,5), (3,6): amplitude 1
  // exactly when each of Alice's bits matches Bob's partner bit.
  std::array<int64_t, 64> bell_product{};
  for (uint64_t b = 0; b < 64; ++b) {
    const uint64_t alice = b >> 3;
    const uint64_t bob = b & 7;
    bell_product[b] = (alice == bob) ? 1 : 0;
  }
  std::array<int64_t, 64> lhs = s.amplitudes;
  int64_t g = 0;
  for (int64_t a : lhs) g = std::gcd(g, a);
  for (int64_t& a : lhs) a /= g;
  // Fix the overall sign by the first nonzero component.
  for (int64_t a : lhs) {
    if (a != 0) {
      if (a < 0)
        for (int64_t& x : lhs) x = -x;
      break;
    }
  }
  return lhs == bell_product;
}

PauliWord extend_to_six(const PauliWord& three_qubit_word, Party party) {
  if (three_qubit_word.num_qubits() != 3)
    throw std::invalid_argument("expected a three-qubit observable");
  std::vector<Pauli> letters(6, Pauli::I);
  const size_t offset = (party == Party::alice) ? 0 : 3;
  for (size_t j = 0; j < 3; ++j) letters[offset + j] = three_qubit_word.letter(j);
  return PauliWord(std::move(letters), three_qubit_word.phase_exp());
}

Rational probability_plus(const SixQubitState& s, const PauliWord& six_qubit_word) {
  if (six_qubit_word.num_qubits() != 6)
    throw std::invalid_argument("expected a six-qubit observable");
  if (!six_qubit_word.is_hermitian())
    throw std::invalid_argument("cannot measure the non-Hermitian " +
                                six_qubit_word.str());
  if (s.is_zero()) throw std::invalid_argument("cannot measure the zero state");
  const auto mv = apply_real_six(six_qubit_word, s.amplitudes);
  int64_t overlap = 0;
  for (int i = 0; i < 64; ++i) overlap += s.amplitudes[static_cast<size_t>(i)] * mv[static_cast<size_t>(i)];
  const int64_t n = s.norm_sq();
  return Rational(n + overlap, 2 * n);
}

Rational collapse(SixQubitState& s, const PauliWord& six_qubit_word, int sign) {
  const Rational p_plus = probability_plus(s, six_qubit_word);
  const Rational p = (sign > 0) ? p_plus : Rational(p_plus.den - p_plus.num, p_plus.den);
  if (p.is_zero())
    throw std::logic_error("collapse onto a zero-probability branch of " +
                           six_qubit_word.str());
  const auto mv = apply_real_six(six_qubit_word, s.amplitudes);
  for (int i = 0; i < 64; ++i)
    s.amplitudes[static_cast<size_t>(i)] += sign > 0 ? mv[static_cast<size_t>(i)] : -mv[static_cast<size_t>(i)];
  if (s.is_zero())
    throw std::logic_error("positive-probability branch collapsed to zero");
  s.reduce();
  return p;
}

MeasurementEvent measure_observable(SixQubitState& s, const PauliWord& obs3,
                                    Party party, const RandomSource& rng,
                                    uint64_t run, uint64_t event) {
  const PauliWord word = extend_to_six(obs3, party);
  const Rational p_plus = probability_plus(s, word);
  int sign;
  if (p_plus.is_one()) {
    sign = +1;
  } else if (p_plus.is_zero()) {
    sign = -1;
  } else {
    sign = rng.bernoulli(p_plus, run, event) ? +1 : -1;
  }
  const Rational p = collapse(s, word, sign);
  return {sign, p};
}

std::optional<std::array<int64_t, 8>> conditional_state(const SixQubitState& s,
                                                        Party party) {
  // View the amplitudes as an 8x8 matrix W[a][b] over (Alice, Bob) indices;
  // the state factors iff W has rank one, and then the rows/columns carry
  // the party vectors.
  int a0 = -1, b0 = -1;
  for (int a = 0; a < 8 && a0 < 0; ++a)
    for (int b = 0; b < 8; ++b)
      if (s.amplitudes[static_cast<size_t>(a * 8 + b)] != 0) {
        a0 = a;
        b0 = b;
        break;
      }
  if (a0 < 0) return std::nullopt;

  const auto w = [&](int a, int b) { return s.amplitudes[static_cast<size_t>(a * 8 + b)]; };
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      if (w(a, b) * w(a0, b0) != w(a, b0) * w(a0, b)) return std::nullopt;

  std::array<int64_t, 8> out;
  for (int i = 0; i < 8; ++i)
    out[static_cast<size_t>(i)] = (party == Party::alice) ? w(i, b0) : w(a0, i);
  return out;
}

HybridOutcome perform_hybrid(SixQubitState& s, Party party, const TableRow& row,
                             const Atlas& atlas, const RandomSource& rng,
                             uint64_t run, uint64_t event_base) {
  const HybridMeasurement& m = row.measurement;
  const Pentagram& p = atlas.pentagram();

  HybridOutcome out;
  const MeasurementEvent pivot =
      measure_observable(s, p.word_of(m.pivot), party, rng, run, event_base);
  out.signs[0] = pivot.sign;
  out.probabilities[0] = pivot.probability;

  const auto& pair = (pivot.sign > 0) ? m.plus_pair : m.minus_pair;
  for (int k = 0; k < 2; ++k) {
    const MeasurementEvent ev =
        measure_observable(s, p.word_of(pair[static_cast<size_t>(k)]), party, rng,
                           run, event_base + 1 + static_cast<uint64_t>(k));
    out.signs[static_cast<size_t>(k + 1)] = ev.sign;
    out.probabilities[static_cast<size_t>(k + 1)] = ev.probability;
  }

  out.cell_index = (out.signs[0] < 0 ? 4 : 0) | (out.signs[1] < 0 ? 2 : 0) |
                   (out.signs[2] < 0 ? 1 : 0);
  const OutcomeCell& cell = row.cells[static_cast<size_t>(out.cell_index)];
  out.ray_id = cell.ray_id;
  out.label = cell.label;

  // Exact audit: the party's conditional state is the predicted ray.
  const auto cond = conditional_state(s, party);
  if (!cond)
    throw std::logic_error("state is not a product after a completed hybrid row");
  std::array<int64_t, 8> canon = *cond;
  canonicalize(canon);
  if (canon != atlas.ray(out.ray_id).amplitudes)
    throw std::logic_error("conditional state disagrees with the outcome table for " +
                           m.symbol());
  return out;
}

std::array<Rational, 8> outcome_distribution(const SixQubitState& s, Party party,
                                             const TableRow& row, const Pentagram& p) {
  std::array<Rational, 8> dist;
  for (int cell = 0; cell < 8; ++cell) {
    const std::array<int, 3> signs = {cell & 4 ? -1 : +1, cell & 2 ? -1 : +1,
                                      cell & 1 ? -1 : +1};
    const HybridMeasurement& m = row.measurement;
    const auto& pair = (signs[0] > 0) ? m.plus_pair : m.minus_pair;
    const std::array<ObsName, 3> sequence = {m.pivot, pair[0], pair[1]};

    SixQubitState branch = s;
    Rational p_cell = Rational::one();
    bool dead = false;
    for (int k = 0; k < 3 && !dead; ++k) {
      const PauliWord word =
          extend_to_six(p.word_of(sequence[static_cast<size_t>(k)]), party);
      const Rational plus = probability_plus(branch, word);
      const Rational prob = (signs[static_cast<size_t>(k)] > 0)
                                ? plus
                                : Rational(plus.den - plus.num, plus.den);
      if (prob.is_zero()) {
        dead = true;
        break;
      }
      collapse(branch, word, signs[static_cast<size_t>(k)]);
      p_cell = p_cell * prob;
    }
    dist[static_cast<size_t>(cell)] = dead ? Rational::zero() : p_cell;
  }
  return dist;
}

std::vector<RunRecord> run_experiment(const Atlas& atlas, const MeasurementTable& table,
                                      int trials, ChoicePolicy policy, uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  const int rows = static_cast<int>(table.rows.size());
  if (rows == 0) throw std::invalid_argument("empty measurement table");
  if (policy.kind == ChoicePolicy::Kind::fixed &&
      (policy.fixed_alice < 0 || policy.fixed_alice >= rows || policy.fixed_bob < 0 ||
       policy.fixed_bob >= rows))
    throw std::invalid_argument("fixed row index out of range");

  const RandomSource rng(seed);
  std::vector<RunRecord> records;
  records.reserve(static_cast<size_t>(trials));
  for (int run = 0; run < trials; ++run) {
    RunRecord rec;
    rec.run_index = run;
    switch (policy.kind) {
      case ChoicePolicy::Kind::uniform:
        rec.alice_row = static_cast<int>(rng.pick(static_cast<uint64_t>(rows),
                                                  static_cast<uint64_t>(run),
                                                  kEventAliceChoice));
        rec.bob_row = static_cast<int>(rng.pick(static_cast<uint64_t>(rows),
                                                static_cast<uint64_t>(run),
                                                kEventBobChoice));
        break;
      case ChoicePolicy::Kind::fixed:
        rec.alice_row = policy.fixed_alice;
        rec.bob_row = policy.fixed_bob;
        break;
      case ChoicePolicy::Kind::round_robin: {
        const int pair = run % (rows * rows);
        rec.alice_row = pair / rows;
        rec.bob_row = pair % rows;
        break;
      }
    }

    SixQubitState state = prepare_psi();
    rec.alice = perform_hybrid(state, Party::alice,
                               table.rows[static_cast<size_t>(rec.alice_row)], atlas,
                               rng, static_cast<uint64_t>(run), kEventAliceMeasureBase);

    // Twin audit: with Alice done, Bob's conditional state must already be
    // Alice's outcome ray (all rays are real, so no conjugation appears).
    const auto bob_cond = conditional_state(state, Party::bob);
    if (!bob_cond)
      throw std::logic_error("state is not a product after Alice's hybrid");
    std::array<int64_t, 8> canon = *bob_cond;
    canonicalize(canon);
    rec.twin_state_verified = canon == atlas.ray(rec.alice.ray_id).amplitudes;
    if (!rec.twin_state_verified)
      throw std::logic_error("twin collapse violated in run " + std::to_string(run));

    rec.bob = perform_hybrid(state, Party::bob,
                             table.rows[static_cast<size_t>(rec.bob_row)], atlas, rng,
                             static_cast<uint64_t>(run), kEventBobMeasureBase);
    records.push_back(std::move(rec));
  }
  return records;
}

CorrelationReport verify_twin_collapse(const std::vector<RunRecord>& records,
                                       const MeasurementTable& table) {
  CorrelationReport report;
  report.total_runs = static_cast<int>(records.size());

  // Shared labels per row pair, precomputed.
  const size_t rows = table.rows.size();
  std::vector<std::vector<std::vector<int>>> common(rows,
                                                    std::vector<std::vector<int>>(rows));
  for (size_t a = 0; a < rows; ++a)
    for (size_t b = 0; b < rows; ++b)
      if (a != b) common[a][b] = table.common_labels(a, b);

  for (const RunRecord& rec : records) {
    if (rec.twin_state_verified) ++report.twin_state_audits;
    ++report.alice_cell_counts[static_cast<size_t>(rec.alice.cell_index)];
    ++report.bob_cell_counts[static_cast<size_t>(rec.bob.cell_index)];

    if (rec.alice_row == rec.bob_row) {
      ++report.same_choice_runs;
      if (rec.alice.label != rec.bob.label || rec.alice.ray_id != rec.bob.ray_id)
        ++report.same_choice_mismatches;
    } else {
      for (int label : common[static_cast<size_t>(rec.alice_row)]
                             [static_cast<size_t>(rec.bob_row)]) {
        ++report.common_label_checks;
        if ((rec.alice.label == label) != (rec.bob.label == label))
          ++report.common_label_violations;
      }
    }
  }

  if (report.total_runs > 0) {
    for (int c = 0; c < 8; ++c) {
      const double fa = static_cast<double>(report.alice_cell_counts[static_cast<size_t>(c)]) /
                        report.total_runs;
      const double fb = static_cast<double>(report.bob_cell_counts[static_cast<size_t>(c)]) /
                        report.total_runs;
      report.max_cell_frequency_deviation =
          std::max({report.max_cell_frequency_deviation, std::abs(fa - 0.125),
                    std::abs(fb - 0.125)});
    }
  }
  return report;
}

KeyMaterial sift_key(const std::vector<RunRecord>& records) {
  KeyMaterial key;
  for (const RunRecord& rec : records) {
    if (rec.alice_row != rec.bob_row) continue;
    key.sifted_runs.push_back(rec.run_index);
    key.alice_letters.push_back(static_cast<char>('0' + rec.alice.cell_index));
    key.bob_letters.push_back(static_cast<char>('0' + rec.bob.cell_index));
  }
  return key;
}

KeyReport verify_key(const KeyMaterial& key, double reveal_fraction,
                     const RandomSource& rng) {
  if (reveal_fraction < 0.0 || reveal_fraction > 1.0)
    throw std::invalid_argument("reveal fraction must lie in [0, 1]");
  const int n = static_cast<int>(key.sifted_runs.size());
  KeyReport report;
  const int reveal = static_cast<int>(
      std::floor(reveal_fraction * static_cast<double>(n) + 1e-9));

  // Partial Fisher-Yates over the sifted positions, driven by the dedicated
  // sample stream.
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  for (int i = 0; i < reveal; ++i) {
    const uint64_t j = rng.pick(static_cast<uint64_t>(n - i), kKeySampleStream,
                                static_cast<uint64_t>(i));
    std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(i) + j]);
  }
  report.revealed_positions.assign(order.begin(), order.begin() + reveal);
  std::sort(report.revealed_positions.begin(), report.revealed_positions.end());

  report.revealed_count = reveal;
  std::set<int> revealed(report.revealed_positions.begin(),
                         report.revealed_positions.end());
  for (int i = 0; i < n; ++i) {
    if (revealed.count(i)) {
      if (key.alice_letters[static_cast<size_t>(i)] != key.bob_letters[static_cast<size_t>(i)])
        ++report.mismatches;
    } else {
      report.final_key.push_back(key.alice_letters[static_cast<size_t>(i)]);
    }
  }
  return report;
}

}  // namespace pentabell
