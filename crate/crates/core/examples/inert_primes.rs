//! Primes at which the cosine fields stay fields.

use nodal::exactfield::{find_inert_prime, is_inert};
use nodal::polycheb::CosineField;

fn main() -> nodal::Result<()> {
    for (n, p) in [(4, 181), (8, 181), (6, 173), (5, 173)] {
        let field = CosineField::for_degree(n)?;
        let m = field.minpoly();
        println!(
            "n = {n}: {m}, {p} inert: {}, smallest inert prime above 100: {}",
            is_inert(m, p)?,
            find_inert_prime(m, 100, 10_000)?
        );
    }
    Ok(())
}
