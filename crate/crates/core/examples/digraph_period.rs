//! Strong connectivity, period and primitivity of companion digraphs.

use perron_poly::digraph::{digraph_of, is_primitive_by_power, wielandt_bound};
use perron_poly::matrix::companion;
use perron_poly::parse_polynomial;

fn main() -> perron_poly::Result<()> {
    for text in ["t^4 - 2t^2 - 3", "t^4 - t - 1", "t^6 - t^3 - 1", "t^3 - t^2"] {
        let c = companion(&parse_polynomial(text)?);
        let g = digraph_of(&c);
        let arcs: Vec<String> = g.arcs().iter().map(|(i, j)| format!("{i}->{j}")).collect();
        print!("{text:<16} arcs [{}]", arcs.join(" "));
        if g.is_strongly_connected() {
            println!(
                "  period {}  primitive {}  (Wielandt bound {})",
                g.period()?,
                is_primitive_by_power(&c)?,
                wielandt_bound(g.n_vertices())
            );
        } else {
            println!("  components {:?}", g.strongly_connected_components());
        }
    }
    Ok(())
}
