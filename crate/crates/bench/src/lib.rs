//! Sample presentations shared by the benchmarks.

use smallcancel::{baumslag_solitar, parse_presentation, surface_presentation, Presentation};

/// Named inputs of increasing size.
pub fn samples() -> Vec<(&'static str, Presentation)> {
    vec![
        ("bs_1_2", baumslag_solitar(1, 2).expect("valid")),
        ("bs_4_5", baumslag_solitar(4, 5).expect("valid")),
        ("surface_3", surface_presentation(3).expect("valid")),
        (
            "one_relator_28",
            parse_presentation("< a, b | a^3 b^4 a^3 b^4 (b^4 a^3 b^4 a^3)^-1 >").expect("valid"),
        ),
    ]
}
