//! Time the bounded maximal-order search across the supported ranks.

use anisobounds::glnz;

fn main() {
    for n in 1..=3usize {
        let t0 = std::time::Instant::now();
        let r = glnz::upsilon_search(n, 1).unwrap();
        println!(
            "rank {n}: max order {} ({} candidates, {} closures) in {:?}",
            r.max_order,
            r.finite_order_candidates,
            r.closures_run,
            t0.elapsed()
        );
    }
}
