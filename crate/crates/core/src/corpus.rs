//! Reference surfaces with known symmetry groups.

use crate::surface::RuledSurface;

pub struct Entry {
    pub name: &'static str,
    pub p: Option<[&'static str; 3]>,
    pub q: [&'static str; 3],
}

/// Directrix of `NONIC_SCROLL` with the first two direction components exchanged.
/// Every candidate except the identity fails the translation step.
pub const CROSSED_SCROLL: Entry = Entry {
    name: "crossed-scroll",
    p: Some([
        "(2t^8-10t^6-10t^4+5t^2+1)/(t^2+1)",
        "-(t^9-6t^7+6t^3+t^2-3t+1)/(t^2+1)",
        "t^7+3t^5+3t^3+t+5",
    ]),
    q: ["-t^6+7t^4-7t^2+1", "2t(t^4-6t^2+1)", "(t^2+1)^3"],
};

pub const NONIC_SCROLL: Entry = Entry {
    name: "nonic-scroll",
    p: Some([
        "(2t^8-10t^6-10t^4+5t^2+1)/(t^2+1)",
        "-(t^9-6t^7+6t^3+t^2-3t+1)/(t^2+1)",
        "t^7+3t^5+3t^3+t+5",
    ]),
    q: ["2t(t^4-6t^2+1)", "-t^6+7t^4-7t^2+1", "(t^2+1)^3"],
};

pub const SEPTIC_SCROLL_A: Entry = Entry {
    name: "septic-scroll-a",
    p: Some(["(t^7+7t^5+3t^3-t^2-3t+1)/(t^2+1)", "2t(4t^5+4t^3+1)/(t^2+1)", "t(t^2+1)^2"]),
    q: ["t^4+6t^2-3", "8t^3", "(t^2+1)^2"],
};

pub const SEPTIC_SCROLL_B: Entry = Entry {
    name: "septic-scroll-b",
    p: Some(["t^6-6t^4+t^2+2t", "-t^7+6t^5-t^3+t^2+t", "t^3+t"]),
    q: ["t^5-6t^3+t", "-t^6+6t^4-t^2+1", "t^2+1"],
};

pub const QUINTIC_SCROLL: Entry = Entry {
    name: "quintic-scroll",
    p: Some(["t^2/(t^2+1)", "t^4/(t^2+1)", "t^5/(t^2+1)"]),
    q: ["t", "t^3", "1"],
};

pub const FOUR_LEAF_CONE: Entry = Entry {
    name: "four-leaf-cone",
    p: None,
    q: ["2t(t^4-6t^2+1)", "(-t^2+1)(t^4-6t^2+1)", "(t^2+1)^3"],
};

pub const QUADRATIC_SCROLL: Entry = Entry {
    name: "quadratic-scroll",
    p: Some(["4", "1", "t"]),
    q: ["(t+1)^2", "t+1", "1"],
};

pub const CUBIC_CONE: Entry = Entry {
    name: "cubic-cone",
    p: None,
    q: ["3(t+1)^2(t-1)", "(t-1)^3", "(t+1)^3"],
};

pub const ODD_SCROLL: Entry = Entry {
    name: "odd-scroll",
    p: Some(["t^3/(t^2+1)", "t^5/(t^2+1)", "t^7/(t^2+1)"]),
    q: ["-t^5+t", "3t^7", "-2t^3"],
};

pub const MIRROR_SCROLL: Entry = Entry {
    name: "mirror-scroll",
    p: Some(["t^4+t^2+t", "t^6+t^3", "t^5+t^3+t^2+3t"]),
    q: ["t^3+t", "t^5", "t^4+t^2+3"],
};

pub const HIGH_DEGREE_SCROLL: Entry = Entry {
    name: "high-degree-scroll",
    p: Some([
        "-(t^17-6t^15+6t^11-6t^7+6t^3-t^2-t+1)/(t^2+1)",
        "2t(t^15-5t^13-5t^11+t^9+t^7-5t^5-5t^3+t+1)/(t^2+1)",
        "t(t^2+1)^3(t^8+1)",
    ]),
    q: ["-t^6+7t^4-7t^2+1", "2t(t^4-6t^2+1)", "(t^2+1)^3"],
};

pub const TRIPLE_TURN_CONE: Entry = Entry {
    name: "triple-turn-cone",
    p: None,
    q: ["-t^4-6t^2+3", "8t^3", "(t^2+1)^2"],
};

pub const ALL: [&Entry; 12] = [
    &CROSSED_SCROLL,
    &NONIC_SCROLL,
    &SEPTIC_SCROLL_A,
    &SEPTIC_SCROLL_B,
    &QUINTIC_SCROLL,
    &FOUR_LEAF_CONE,
    &QUADRATIC_SCROLL,
    &CUBIC_CONE,
    &ODD_SCROLL,
    &MIRROR_SCROLL,
    &HIGH_DEGREE_SCROLL,
    &TRIPLE_TURN_CONE,
];

impl Entry {
    pub fn surface(&self) -> RuledSurface {
        RuledSurface::from_strings(self.name, self.p.as_ref(), &self.q).expect("corpus entries parse")
    }
}

pub fn by_name(name: &str) -> Option<&'static Entry> {
    ALL.iter().copied().find(|e| e.name == name)
}
