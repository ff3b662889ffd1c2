//! Reference presentations used throughout the tests and shipped as golden
//! `.quiver` files.

use crate::quiver::RawQuiver;

/// Eight vertices, nine arrows, four relations; `phi = [(2,3),(2,4),(3,2)]`.
pub fn running_example() -> RawQuiver {
    RawQuiver::new("running_example")
        .vertices(["a", "b", "c", "d", "e", "f", "g", "h"])
        .arrow("a1", "a", "e")
        .arrow("a2", "e", "f")
        .arrow("a3", "f", "g")
        .arrow("a4", "f", "a")
        .arrow("a5", "a", "b")
        .arrow("a6", "b", "c")
        .arrow("a7", "c", "h")
        .arrow("a8", "e", "d")
        .arrow("a9", "g", "h")
        .relation("a4", "a2")
        .relation("a1", "a4")
        .relation("a8", "a1")
        .relation("a6", "a5")
}

/// Nine vertices, ten arrows; used for the thread and sign tables.
pub fn signed_example() -> RawQuiver {
    RawQuiver::new("signed_example")
        .vertices(["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9"])
        .arrow("a1", "v1", "v2")
        .arrow("a2", "v2", "v3")
        .arrow("a3", "v3", "v4")
        .arrow("a4", "v4", "v8")
        .arrow("a5", "v4", "v5")
        .arrow("a6", "v5", "v6")
        .arrow("a7", "v9", "v8")
        .arrow("a8", "v9", "v6")
        .arrow("a9", "v3", "v7")
        .arrow("a10", "v7", "v4")
        .relation("a4", "a3")
        .relation("a5", "a10")
        .relation("a3", "a2")
        .relation("a2", "a1")
}

/// First of the two-cycle pair with `phi = [(3,5)]`.
pub fn pair_a() -> RawQuiver {
    RawQuiver::new("pair_A")
        .vertices(["v1", "v2", "v3", "v4"])
        .arrow("a1", "v1", "v2")
        .arrow("a2", "v1", "v2")
        .arrow("a3", "v2", "v3")
        .arrow("a4", "v2", "v4")
        .arrow("a5", "v3", "v4")
        .relation("a3", "a1")
        .relation("a4", "a2")
        .relation("a5", "a3")
}

/// Second of the two-cycle pair with `phi = [(3,5)]`.
pub fn pair_b() -> RawQuiver {
    RawQuiver::new("pair_B")
        .vertices(["v1", "v2", "v3", "v4"])
        .arrow("e", "v1", "v2")
        .arrow("f", "v2", "v4")
        .arrow("g", "v2", "v4")
        .arrow("c", "v4", "v3")
        .arrow("d", "v3", "v1")
        .relation("d", "c")
        .relation("e", "d")
        .relation("f", "e")
        .relation("c", "g")
}

pub fn single_vertex() -> RawQuiver {
    RawQuiver::new("a1").vertex("v")
}

pub fn a2() -> RawQuiver {
    RawQuiver::new("a2")
        .vertices(["v1", "v2"])
        .arrow("a", "v1", "v2")
}

pub fn kronecker() -> RawQuiver {
    RawQuiver::new("kronecker")
        .vertices(["v1", "v2"])
        .arrow("a", "v1", "v2")
        .arrow("b", "v1", "v2")
}

/// A loop `a` with `a a = 0`.
pub fn loop_with_relation() -> RawQuiver {
    RawQuiver::new("loop")
        .vertex("v")
        .arrow("a", "v", "v")
        .relation("a", "a")
}

/// A loop without relations; not finite-dimensional.
pub fn loop_without_relation() -> RawQuiver {
    RawQuiver::new("loop_no_rel")
        .vertex("v")
        .arrow("a", "v", "v")
}

/// An oriented 2-cycle with both compositions zero.
pub fn two_cycle_full() -> RawQuiver {
    RawQuiver::new("two_cycle")
        .vertices(["u", "v"])
        .arrow("g", "u", "v")
        .arrow("d", "v", "u")
        .relation("d", "g")
        .relation("g", "d")
}
