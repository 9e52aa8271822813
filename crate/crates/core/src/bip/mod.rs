//! BIP composed models: syntax, parser and interaction semantics.

pub mod exec;
pub mod model;
pub mod parse;

pub use exec::{
    apply_interaction, enabled_interactions, initial_state, reachable_from, reachable_states,
    BipOptions, BipSem, BipState, Interaction, InteractionView, StateGraph,
};
pub use model::{AtomicComponent, BipTransition, BuildError, ComposedModel, Connector, Endpoint, Port};
pub use parse::parse_bip;
