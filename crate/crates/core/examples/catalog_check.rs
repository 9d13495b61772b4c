//! Runs the fast catalog expectations and prints one line per check.

use nodal::catalog::Catalog;

fn main() -> nodal::Result<()> {
    let cat = Catalog::open()?;
    let fast = ["quadric-node", "chmutov-cubic", "quartic-double-solid-1", "todd-quartic", "cubic-d4-matrix", "mu3-bounds"];
    for name in fast {
        for c in cat.run_expectations(name)? {
            println!(
                "{} {name}.{} = {} ({:?})",
                if c.passed { "PASS" } else { "FAIL" },
                c.key,
                c.actual.map_or_else(|| c.error.unwrap_or_default(), |v| v.to_string()),
                c.tag
            );
        }
    }
    Ok(())
}
