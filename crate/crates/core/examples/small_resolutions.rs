//! Projective small resolutions from intersection data.

use nodal::catalog::Catalog;
use nodal::exactfield::json::format_rational;
use nodal::reslattice::{count_projective, relations, CountOptions, IntersectionMatrix, SignVector};

fn main() -> nodal::Result<()> {
    let cat = Catalog::open()?;
    for name in ["chmutov-cubic", "relations-quartic-double-solid-1", "cubic-d4-matrix", "ci-quadrics-s6", "kummer-16"] {
        let m = cat.load(name)?.lattice()?;
        let r = count_projective(&m, &CountOptions::default())?;
        println!("{name}: s = {}, dim A = {}, {} of {} flips projective", r.s, r.dim_a, r.projective_count, r.total);
    }

    // a single relation with positive coefficients blocks projectivity
    let m = IntersectionMatrix::from_i64(&[&[1, -1, 0], &[0, 1, -1]])?;
    let b = relations(&m);
    for v in &b.vectors {
        let v: Vec<String> = v.iter().map(format_rational).collect();
        println!("relation of a 2x3 matrix: ({})", v.join(", "));
    }
    let p = nodal::reslattice::is_projective(&m)?;
    println!("all-plus flip projective: {}", p.is_projective());
    let eps = SignVector::new(vec![1, 1, -1])?;
    println!("flip {eps} projective: {}", nodal::reslattice::is_projective(&nodal::reslattice::flip(&m, &eps)?)?.is_projective());
    Ok(())
}
