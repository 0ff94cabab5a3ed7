// Checks W_T^2 = 2 I_(x1,x1) + I_(t) path by path for a few grid sizes.
#include <qsalg/qsalg.hpp>

#include <cstdio>

int main()
{
    using namespace qsalg;
    const Alphabet alpha = build_alphabet({LevySpec{"x1", 0, 1, {}}});
    const Word x{LetterId{0}};
    std::printf("x1 * x1 = %s\n", render(quasi_shuffle(x, x, alpha.table), alpha.table).c_str());

    VerifyOptions opt;
    opt.paths = 200;
    for (long steps : {100L, 1000L, 10000L}) {
        opt.dt = Rational(1, steps);
        const ErrorReport r = verify_product(x, x, alpha, opt);
        std::printf("dt = 1/%-6ld rms %.5f  max %.5f\n", steps, r.rms_error, r.max_abs_error);
    }
}
