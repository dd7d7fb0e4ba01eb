//! Fundamental quandles of oriented tangles: finite quandles, presentations,
//! tangle diagrams, the bordered quandle functor, and coloring counts.

pub mod boundary;
pub mod colorings;
pub mod constructions;
pub mod corpus;
pub mod free;
pub mod functor;
pub mod presentation;
pub mod quandle;
pub mod tangle;
pub mod term;
pub mod tietze;
pub mod verify;

pub use boundary::{Sign, SignedBoundary};
pub use free::{fq_op, FreeGroupWord, FreeQuandleElement};
pub use presentation::{
    amalgamate, amalgamate_with_renaming, tensor_morphisms, BorderedMorphism, PresentationError,
    QuandlePresentation, Relation, Renaming,
};
pub use quandle::{
    builtin_quandle, conj_sym3, conjugation_quandle, dihedral_quandle, test_quandles, validate_quandle, Axiom,
    FiniteQuandle, QuandleError, Witness,
};
pub use term::{eval_term, EvalError, Op, QuandleTerm};
pub use tietze::{simplify_morphism, tietze_simplify, Simplified};
pub use tangle::{
    cable_diagram, parse_tangle, CrossingKind, DslError, Slice, TangleDiagram, TangleError,
};
pub use colorings::{count_colorings, endpoint_colors, enumerate_colorings, Coloring, Enumeration};
pub use functor::{bq, bq_compose_check};
pub use constructions::{
    braid_action, cable_presentation, classical_closure, classical_closure_unsimplified, connected_sum,
    connected_sum_unsimplified, periodic_link,
    plat_closure, satellite, BraidAutomorphism, ConstructionError,
};
