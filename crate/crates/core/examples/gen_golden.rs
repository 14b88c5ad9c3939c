//! Regenerate the golden ledger table after a deliberate rule change:
//! cargo run -p anisobounds --example gen_golden > crates/core/tests/golden/bounds_table.txt

fn main() {
    print!("{}", anisobounds::bounds::render_table());
}
