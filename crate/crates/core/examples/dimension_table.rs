//! Prints dim A_k for both conventions and tadpole policies.
//!
//!     cargo run --release -p ak-core --example dimension_table -- 5

use ak_core::homology::dimension;
use ak_core::{Convention, TadpolePolicy};

fn main() {
    let max_k: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    println!("{:>3} {:>10} {:>8} {:>8} {:>5} {:>5}", "k", "convention", "tadpoles", "classes", "rank", "dim");
    for k in 1..=max_k {
        for c in [Convention::Even, Convention::Odd] {
            for p in [TadpolePolicy::Exclude, TadpolePolicy::Include] {
                match dimension(k, c, p) {
                    Ok(r) => println!(
                        "{k:>3} {:>10} {:>8} {:>8} {:>5} {:>5}",
                        c.as_str(),
                        p.as_str(),
                        r.num_classes,
                        r.rank,
                        r.dimension
                    ),
                    Err(e) => println!("{k:>3} {:>10} {:>8} error: {e}", c.as_str(), p.as_str()),
                }
            }
        }
    }
}
