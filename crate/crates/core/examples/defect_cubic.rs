//! Defect of the six-node Chmutov cubic and of the quadric cone.

use nodal::catalog::{Catalog, Object};
use nodal::chmutov::{chmutov_nodes, SignPattern, VarietyKind};
use nodal::defect::{defect_exact, evaluation_matrix};

fn main() -> nodal::Result<()> {
    let (v, nodes) = chmutov_nodes(VarietyKind::HypersurfaceP4, 3, &SignPattern::parse("++++")?)?;
    let em = evaluation_matrix(&v, &nodes.nodes)?;
    println!("cubic: {} nodes, {} linear forms", em.nrows(), em.ncols());
    let r = defect_exact(&v, &nodes.nodes)?.without_timing();
    println!("  rank {}, defect {}", r.rank, r.defect);

    let loaded = Catalog::open()?.load("quadric-node")?;
    if let Object::Variety { variety, nodes, .. } = &loaded.object {
        let r = defect_exact(variety, &nodes.nodes)?;
        println!("quadric cone: s = {}, defect {}", r.s, r.defect);
    }
    Ok(())
}
