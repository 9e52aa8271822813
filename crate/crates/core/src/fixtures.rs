//! The shipped model corpus.

use thiserror::Error;

/// A stored model text together with what it is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub file: &'static str,
    pub source: &'static str,
    pub note: &'static str,
}

impl Fixture {
    pub fn is_sfc(&self) -> bool {
        self.file.ends_with(".sfc")
    }
}

macro_rules! fixture {
    ($name:literal, $file:literal, $note:literal) => {
        Fixture {
            name: $name,
            file: $file,
            source: include_str!(concat!("../fixtures/", $file)),
            note: $note,
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("fig3", "fig3.sfc", "four-step example chart with x, y in [0..31]"),
    fixture!("temperature", "temperature.bip", "reactor controller with two rods, reconstructed rates"),
    fixture!("pattern_simple", "pattern_simple.sfc", "one source step, one target step"),
    fixture!("pattern_divergence", "pattern_divergence.sfc", "alternative divergence"),
    fixture!("pattern_convergence", "pattern_convergence.sfc", "alternative convergence"),
    fixture!("pattern_parallel_div", "pattern_parallel_div.sfc", "one source step, two target steps, one guard"),
    fixture!("pattern_parallel_conv", "pattern_parallel_conv.sfc", "two source steps, one target step"),
    fixture!("raw", "raw.sfc", "intra-cycle read after write"),
    fixture!("single", "single.sfc", "one step, nothing else"),
    fixture!("extended", "extended.sfc", "stored, reset and pulse qualifiers"),
];

/// Pinned counts and verdicts, each with the oracle that produced it.
pub const PINNED_JSON: &str = include_str!("../fixtures/pinned.json");

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown fixture `{0}`")]
pub struct UnknownFixture(pub String);

pub fn fixture(name: &str) -> Result<&'static Fixture, UnknownFixture> {
    FIXTURES
        .iter()
        .find(|f| f.name == name || f.file == name)
        .ok_or_else(|| UnknownFixture(name.to_string()))
}

/// Exact stored text of a fixture.
pub fn load_fixture(name: &str) -> Result<&'static str, UnknownFixture> {
    fixture(name).map(|f| f.source)
}

/// Fixtures written in the non-extended SFC dialect.
pub fn sfc_fixtures() -> impl Iterator<Item = &'static Fixture> {
    FIXTURES.iter().filter(|f| f.is_sfc() && f.name != "extended")
}
