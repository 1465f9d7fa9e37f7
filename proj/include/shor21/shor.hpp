#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "shor21/qsim.hpp"

namespace shor21::shor {

// The compiled instance: N = 21, a = 4, three control bits, order r = 3.
struct ShorInstance {
    long long n = 21;
    long long a = 4;
    int n_bits = 3;
    long long expected_order = 3;

    void validate() const;  // gcd(a,N)=1, 1<a<N, N odd composite
};

enum class CircuitVariant { FullToffoli, Margolus };

// work-register encoding: level |1> -> 00, |4> -> 01, |16> -> 10
std::uint32_t work_level_encoding(long long level);

// U^1: the map |1> -> |4| realized as a single CX(c2 -> q1)
Circuit build_u1();
// U^2: CX(c1 -> q1) then Fredkin(c1; q0, q1) lowered to CX(q1->q0), Toffoli(c1,q0->q1), CX(q1->q0)
Circuit build_u2();
// U^4: zero-controlled Toffoli on q0 (X q1 conjugation) then Fredkin(c0; q0, q1)
Circuit build_u4();

// textbook inverse QFT with the swap network; unitary entry (j,k) = w^{-jk}/sqrt(2^n)
Circuit inverse_qft(int n_bits);

// Control-role assignment: which control qubit drives the U^1, U^2 and U^4
// blocks. The compiled default is (c2, c1, c0); permuting it only relabels
// the outcome bits.
struct ControlAssignment {
    int u1 = 2;
    int u2 = 1;
    int u4 = 0;
};

Circuit build_compiled_circuit(CircuitVariant variant, const ControlAssignment& controls = {});

// op counts locating the verification checkpoints in the compiled circuit
// (after the Hadamards, after the U^1+CX prefix, after U^2, mid-U^4)
std::array<std::size_t, 4> compiled_checkpoint_op_counts();
// number of ops forming the modular-exponentiation part (everything before the inverse QFT)
std::size_t compiled_mod_exp_op_count();

// exact state after modular exponentiation, before the inverse QFT
StateVector ideal_pre_qft_state();

struct OrderFindingResult {
    StateVector final_state;
    std::vector<double> control_distribution;  // 8 outcomes, ascending (c0 c1 c2)
};

OrderFindingResult run_order_finding(const ShorInstance& instance, CircuitVariant variant);

// convenience: the exact ideal 3-bit control distribution of the compiled circuit
std::vector<double> ideal_control_distribution();

// lower Toffoli (6 CX), Margolus (3 CX), Fredkin and SWAP into {1-qubit, CX, CPhase}
Circuit lower_toffolis(const Circuit& circuit);

}  // namespace shor21::shor
