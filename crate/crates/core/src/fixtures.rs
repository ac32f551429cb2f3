//! Built-in networks used by the demos and tests.

use crate::framework::Framework;

fn build(args: &[&str], attacks: &[(&str, &str)]) -> Framework {
    Framework::new(args, attacks).expect("fixture is well formed")
}

/// X → Y → W ↔ Z.
pub fn fig6() -> Framework {
    build(
        &["X", "Y", "W", "Z"],
        &[("X", "Y"), ("Y", "W"), ("W", "Z"), ("Z", "W")],
    )
}

/// Three-cycle A → B → C → A, B → X, X ↔ Y, isolated Z.
pub fn fig9_left() -> Framework {
    build(
        &["X", "Y", "A", "B", "C", "Z"],
        &[("A", "B"), ("B", "C"), ("C", "A"), ("B", "X"), ("X", "Y"), ("Y", "X")],
    )
}

/// X ↔ Y, X → B, three-cycle A → B → C → A, isolated Z.
pub fn fig9_right() -> Framework {
    build(
        &["X", "Y", "A", "B", "C", "Z"],
        &[("X", "Y"), ("Y", "X"), ("X", "B"), ("A", "B"), ("B", "C"), ("C", "A")],
    )
}

/// X ↔ Y, Z ↔ W, Z → Z.
pub fn min_product_example() -> Framework {
    build(
        &["X", "Y", "W", "Z"],
        &[("X", "Y"), ("Y", "X"), ("Z", "W"), ("W", "Z"), ("Z", "Z")],
    )
}

pub fn self_loop() -> Framework {
    build(&["X"], &[("X", "X")])
}

pub fn two_cycle(a: &str, b: &str) -> Framework {
    build(&[a, b], &[(a, b), (b, a)])
}

pub fn three_cycle() -> Framework {
    build(&["A", "B", "C"], &[("A", "B"), ("B", "C"), ("C", "A")])
}

/// X1 → X2 → … → Xn.
pub fn chain(n: usize) -> Framework {
    let names: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let attacks: Vec<(String, String)> = names
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    Framework::new(&names, &attacks).expect("chain is well formed")
}

/// Att(N) = {P, Q}, Att(P) = {N}, Att(Q) = {P, N}.
pub fn npq() -> Framework {
    build(
        &["N", "P", "Q"],
        &[("P", "N"), ("Q", "N"), ("N", "P"), ("P", "Q"), ("N", "Q")],
    )
}
