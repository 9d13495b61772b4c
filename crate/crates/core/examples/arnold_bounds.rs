//! Upper bounds for node counts and the asymptotic constants.

use nodal::arnold::{asymptotic_check, mu3_upper_row, slab_volume, BoundsTable};

fn main() -> nodal::Result<()> {
    print!("{}", mu3_upper_row(2..=12)?.to_csv());
    let t = BoundsTable::for_dimension(4, 2..=5)?;
    for r in &t.rows {
        println!("P4, degree {}: arnold {}, bruce {}", r.d, r.arnold, r.bruce);
    }
    for n in 3..=5 {
        println!("slab volume a_{n} = {}", slab_volume(n)?.value);
    }
    let r = asymptotic_check(50)?;
    let last = r.rows.last().expect("rows");
    println!("sqrt(50) a_50 = {} (limit {})", last.sqrt_n_a_n, r.limit_a);
    println!("sqrt(50) c_50 = {} (limit {})", last.sqrt_n_c_n, r.limit_c);
    Ok(())
}
