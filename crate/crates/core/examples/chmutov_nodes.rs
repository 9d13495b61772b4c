//! Enumerates and verifies the nodes of Chmutov varieties.

use nodal::chmutov::{chmutov_nodes, node_count_formula, verify_all, SignPattern, VarietyKind};

fn main() -> nodal::Result<()> {
    let cases = [
        (VarietyKind::HypersurfaceP4, 3, "++++"),
        (VarietyKind::HypersurfaceP4, 4, "++--"),
        (VarietyKind::HypersurfaceP4, 5, "++++"),
        (VarietyKind::DoubleSolidP3, 6, "+++;+1"),
        (VarietyKind::DoubleSolidP3, 8, "+--;+1"),
    ];
    for (kind, n, signs) in cases {
        let signs = SignPattern::parse(signs)?;
        let (v, nodes) = chmutov_nodes(kind, n, &signs)?;
        let bad = verify_all(&v, &nodes.nodes, true)?;
        println!(
            "{kind} n = {n} {signs}: {} nodes (formula {}), {}",
            nodes.len(),
            node_count_formula(kind, n, &signs)?,
            if bad.is_none() { "all ordinary double points" } else { "VERIFICATION FAILED" }
        );
    }
    let (v, nodes) = chmutov_nodes(VarietyKind::HypersurfaceP4, 3, &SignPattern::parse("++++")?)?;
    for (label, p) in nodes.labels(&v).iter().zip(nodes.iter()) {
        let cs: Vec<String> = p.coords.iter().map(ToString::to_string).collect();
        println!("  {label}: ({})", cs.join(", "));
    }
    Ok(())
}
