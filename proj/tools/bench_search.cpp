// Benchmark of the witness-search kernels: serial reference vs the
// OpenMP-parallel scan, on anisotropic inputs so both engines sweep the whole
// candidate space. Results must agree exactly.

#include "c2f/isotropy.hpp"
#include "c2f/parser.hpp"
#include "c2f/search.hpp"

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace c2f;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn>
double timed(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return ms_since(t0);
}

void row(const std::string& name, long long candidates, double serial_ms, double parallel_ms) {
    std::cout << name << "  candidates=" << candidates << "  serial=" << serial_ms
              << " ms  parallel=" << parallel_ms << " ms  speedup=" << serial_ms / parallel_ms
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    int deg = argc > 1 ? std::atoi(argv[1]) : 2;
    long long cap = argc > 2 ? std::atoll(argv[2]) : (1LL << 22);

#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without OpenMP: parallel kernels run serially\n";
#endif

    // anisotropic dim-8 form over the two-variable Laurent tower: full sweep
    {
        auto F = parse_field("GF(2)((a))((b))");
        QuadraticForm q = parse_form("pf<<a,b;1]]", F);
        std::optional<std::vector<Elem>> r1, r2;
        double t1 = timed([&] { r1 = brute_witness_serial(q, deg, cap); });
        double t2 = timed([&] { r2 = brute_witness_parallel(q, deg, cap); });
        if (r1.has_value() != r2.has_value()) {
            std::cerr << "kernel mismatch on the tower form\n";
            return 1;
        }
        row("tower pf<<a,b;1]] (anisotropic)", brute_candidate_count(q, deg), t1, t2);
    }

    // anisotropic dim-4 form over GF(8): exhaustive finite sweep
    {
        auto F = parse_field("GF(2^3)");
        QuadraticForm q = parse_form("[1,g] | g*[1,g]", F);
        bool an = certify_anisotropic(q) == Tri::Yes;
        std::optional<std::vector<Elem>> r1, r2;
        double t1 = timed([&] { r1 = finite_witness_serial(q, 1ULL << 26); });
        double t2 = timed([&] { r2 = finite_witness_parallel(q, 1ULL << 26); });
        bool agree = r1.has_value() == r2.has_value() &&
                     (!r1 || (evaluate(q, *r1).is_zero() && evaluate(q, *r2).is_zero()));
        if (!agree) {
            std::cerr << "kernel mismatch on the finite form\n";
            return 1;
        }
        row(std::string("GF(8) dim-4 ") + (an ? "(anisotropic)" : "(isotropic)"), 8LL * 8 * 8 * 8,
            t1, t2);
    }

    // isotropic dim-6 form over the tower: both kernels stop at the least hit
    {
        auto F = parse_field("GF(2)((a))((b))");
        QuadraticForm q = parse_form("[1,a+b] | a*[1,a] | b*[1,b]", F);
        std::optional<std::vector<Elem>> r1, r2;
        double t1 = timed([&] { r1 = brute_witness_serial(q, deg, cap); });
        double t2 = timed([&] { r2 = brute_witness_parallel(q, deg, cap); });
        bool agree = r1.has_value() == r2.has_value();
        if (agree && r1) {
            // deterministic contract: identical least-index witness
            agree = *r1 == *r2;
        }
        if (!agree) {
            std::cerr << "kernel mismatch on the isotropic tower form\n";
            return 1;
        }
        row("tower dim-6 (isotropic, early exit)", brute_candidate_count(q, deg), t1, t2);
    }

    std::cout << "kernels agree on all benchmark inputs\n";
    return 0;
}
