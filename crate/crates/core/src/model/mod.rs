//! The resolved, immutable model shared by every pipeline stage.

mod arch;
mod behavior;
mod component;
mod dataflow;
mod expr;
mod flatten;
mod types;

pub use arch::{Architecture, GenericScope, ProfileId, ResolveError, ResolvedType};
pub use behavior::{
    Action, ActivityGraph, ActivityNode, Automaton, BehaviorAttachment, BehaviorModel, Edge,
    EdgeGuard, EdgeTarget, NodeKind, Transition,
};
pub use component::{
    ComponentType, ConfigParam, Connector, Direction, PortDecl, PortRef, Schedule,
    SubcomponentInstance, VarDecl,
};
pub use dataflow::{dataflow_graph, DataflowGraph};
pub use expr::{BinaryOp, Expr, UnaryOp};
pub use flatten::{
    flatten_architecture, join_path, AtomicInstance, CompositeInstance, FlattenError,
    InstanceNetwork, Link, PortAddr, ResolvedPort,
};
pub use types::{
    DataModel, DataType, EnumDecl, FieldDecl, Literal, Primitive, RecordDecl, TypeRef, Value,
};
