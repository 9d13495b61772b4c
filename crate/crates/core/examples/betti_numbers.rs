//! Betti numbers of a nodal quintic and of its resolutions.

use nodal::chmutov::VarietyKind;
use nodal::defect::betti_report;

fn main() -> nodal::Result<()> {
    let r = betti_report(VarietyKind::HypersurfaceP4, 5, 96, 10, 0)?;
    println!("smooth quintic: b3 = {}, e = {}", r.b3_smooth, r.e_smooth);
    for (name, b) in [("nodal", r.nodal), ("small", r.small), ("big", r.big)] {
        println!("{name:>6}: b2 = {:>3}  b3 = {:>3}  b4 = {:>3}  e = {:>4}", b.b2, b.b3, b.b4, b.e);
    }
    println!("h11 = {}, h21 = {:?}", r.h11, r.h21);
    let ds = betti_report(VarietyKind::DoubleSolidP3, 8, 144, 9, 0)?;
    println!("octic double solid, 144 nodes: small resolution e = {}, h21 = {:?}", ds.small.e, ds.h21);
    Ok(())
}
