//! Long cycles with many chords in graphs of large minimum degree: an
//! executable pipeline of expander, rotation and gadget heuristics, each
//! stage checked against its structural postconditions, plus an exhaustive
//! oracle for small instances.

pub mod cycles;
pub mod expander;
pub mod gadgets;
pub mod graph;
pub mod oracle;
pub mod pipeline;
