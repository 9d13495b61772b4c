//! Exact defects against their reductions modulo inert primes.

use nodal::chmutov::{chmutov_nodes, SignPattern, VarietyKind};
use nodal::defect::{defect_exact, defect_modular};

fn main() -> nodal::Result<()> {
    let cases = [
        (VarietyKind::HypersurfaceP4, 4, "++++", 181),
        (VarietyKind::HypersurfaceP4, 4, "++--", 181),
        (VarietyKind::HypersurfaceP4, 4, "+++-", 181),
        (VarietyKind::HypersurfaceP4, 5, "++++", 173),
        (VarietyKind::DoubleSolidP3, 6, "++-;+1", 173),
    ];
    for (kind, n, signs, p) in cases {
        let (v, nodes) = chmutov_nodes(kind, n, &SignPattern::parse(signs)?)?;
        let exact = defect_exact(&v, &nodes.nodes)?;
        let modular = defect_modular(&v, &nodes.nodes, p)?;
        println!(
            "{kind} n = {n} {signs}: s = {}, d = {} ({} ms), d'({p}) = {} ({} ms)",
            exact.s,
            exact.defect,
            exact.runtime_ms.unwrap_or(0),
            modular.defect,
            modular.runtime_ms.unwrap_or(0)
        );
    }
    Ok(())
}
