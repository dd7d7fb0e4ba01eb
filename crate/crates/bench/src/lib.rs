//! Shared inputs for the benchmarks.

use fquandle::constructions::{periodic_link_unsimplified, satellite_unsimplified};
use fquandle::{bq, classical_closure_unsimplified, corpus, QuandlePresentation, Sign};

/// Closed presentations of increasing size, unsimplified so the search sees
/// every generator.
pub fn presentations() -> Vec<(&'static str, QuandlePresentation)> {
    let m = |n: &str| bq(&corpus::tangle(n));
    vec![
        ("trefoil", classical_closure_unsimplified(&m("trefoil")).unwrap()),
        ("figure_eight", classical_closure_unsimplified(&m("figure_eight")).unwrap()),
        ("pretzel_333", periodic_link_unsimplified(&m("pretzel"), 3).unwrap()),
        (
            "trefoil_double",
            satellite_unsimplified(&m("double_pattern"), &m("trefoil"), &[Sign::Minus, Sign::Plus]).unwrap(),
        ),
    ]
}
