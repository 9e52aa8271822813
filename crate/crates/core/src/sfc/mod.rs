//! Sequential Function Charts: syntax, parser and non-extended semantics.

pub mod exec;
pub mod model;
pub mod parse;

pub use exec::{
    cycle_boundaries, cycle_trace, micro_successors, reachable_configs, reachable_cycles,
    reachable_phased, run_cycle, ConfigGraph, MicroStep, Mode, Phase, PhasedNode, Sem, SemOptions,
    SfcLabel,
};
pub use model::{
    ActionBlock, ActionDef, ConfigView, Configuration, Dialect, ExtConfiguration, Qualifier,
    SfcModel, SfcStep, SfcTransition,
};
pub use parse::parse_sfc;
