//! Chebyshev polynomials, the square-root identity for T_n + 1 and the
//! factorization of T_n(x) ± T_n(y).

use nodal::polycheb::{cheb_half, cheb_sum_factors, chebyshev, Sign};

fn main() -> nodal::Result<()> {
    for n in 0..=6 {
        println!("T_{n} = {}", chebyshev(n));
    }
    for n in [2, 4, 6] {
        println!("F_{n} = {}   (T_{n} + 1 = 2^{} F_{n}^2)", cheb_half(n)?, n - 1);
    }
    for (n, sign) in [(3, Sign::Plus), (4, Sign::Minus), (5, Sign::Plus)] {
        let f = cheb_sum_factors(n, sign)?;
        let factors: Vec<String> = f.factors.iter().map(|(mu, p)| format!("C({mu}) = {p}")).collect();
        println!("T_{n}(x) {} T_{n}(y): c = {}", sign.as_char(), f.scalar);
        for line in factors {
            println!("    {line}");
        }
    }
    Ok(())
}
