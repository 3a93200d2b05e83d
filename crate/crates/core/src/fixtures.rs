//! Small named categories used throughout tests, benches and examples.

use crate::fincat::{validate_category, FinCategory, RawCategory};

fn build(raw: RawCategory) -> FinCategory {
    let name = raw.name.clone();
    match validate_category(&raw.with_identity_composites()) {
        Ok(c) => c,
        Err(v) => panic!("fixture {name} is invalid: {v:?}"),
    }
}

/// `T`: one object `*`, one morphism `id`.
pub fn terminal() -> FinCategory {
    build(
        RawCategory::new("T")
            .object("*")
            .morphism("id", "*", "*")
            .identity("*", "id"),
    )
}

/// `Arr`: the walking arrow `u: a → b`.
pub fn arrow() -> FinCategory {
    build(
        RawCategory::new("Arr")
            .object_with_identity("a")
            .object_with_identity("b")
            .morphism("u", "a", "b"),
    )
}

/// The discrete category on `n` objects named `a`, `b`, ...
pub fn discrete(n: usize) -> FinCategory {
    let mut raw = RawCategory::new(format!("D{n}"));
    for k in 0..n {
        raw = raw.object_with_identity(&object_name(k));
    }
    build(raw)
}

/// Two parallel arrows `f, g: a → b`.
pub fn parallel_pair() -> FinCategory {
    build(
        RawCategory::new("Par")
            .object_with_identity("a")
            .object_with_identity("b")
            .morphism("f", "a", "b")
            .morphism("g", "a", "b"),
    )
}

/// The cyclic group of order `n` as a one-object category. For `n = 2`
/// the morphisms are `e` and `s`; otherwise `e, s, s2, ...`.
pub fn cyclic(n: usize) -> FinCategory {
    assert!(n >= 1);
    let name = |k: usize| match k {
        0 => "e".to_string(),
        1 => "s".to_string(),
        k => format!("s{k}"),
    };
    let mut raw = RawCategory::new(format!("Z{n}")).object("*");
    for k in 0..n {
        raw = raw.morphism(&name(k), "*", "*");
    }
    raw = raw.identity("*", "e");
    for a in 0..n {
        for b in 0..n {
            raw = raw.compose(&name(a), &name(b), &name((a + b) % n));
        }
    }
    build(raw)
}

/// A two-object category that is neither thin nor a groupoid:
/// `f, g: a → b` swapped by an involution `t: b → b`.
pub fn twisted_pair() -> FinCategory {
    build(
        RawCategory::new("Twist")
            .object_with_identity("a")
            .object_with_identity("b")
            .morphism("f", "a", "b")
            .morphism("g", "a", "b")
            .morphism("t", "b", "b")
            .compose("f", "t", "g")
            .compose("g", "t", "f")
            .compose("t", "t", "id_b"),
    )
}

/// Two objects with a common target `z` and nothing above them: the
/// cospan `p: a → z ← b: q` has no pullback.
pub fn cospan_without_pullback() -> FinCategory {
    build(
        RawCategory::new("NoPb")
            .object_with_identity("a")
            .object_with_identity("b")
            .object_with_identity("z")
            .morphism("p", "a", "z")
            .morphism("q", "b", "z"),
    )
}

/// The commutative square `a → b, a → c, b → d, c → d` (one arrow a → d).
pub fn square() -> FinCategory {
    build(
        RawCategory::new("Sq")
            .object_with_identity("a")
            .object_with_identity("b")
            .object_with_identity("c")
            .object_with_identity("d")
            .morphism("x", "a", "b")
            .morphism("y", "a", "c")
            .morphism("z", "b", "d")
            .morphism("w", "c", "d")
            .morphism("diag", "a", "d")
            .compose("x", "z", "diag")
            .compose("y", "w", "diag"),
    )
}

/// Every named fixture.
pub fn all() -> Vec<FinCategory> {
    vec![
        terminal(),
        arrow(),
        discrete(2),
        parallel_pair(),
        cyclic(2),
        cyclic(3),
        twisted_pair(),
        cospan_without_pullback(),
        square(),
    ]
}

fn object_name(k: usize) -> String {
    if k < 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("o{k}")
    }
}
