//! Expression language and scene files.
//!
//! [`expr`] is a recursive-descent parser and printer for the scalar
//! expressions that define curves (`s`) and surfaces (`s`, `t`);
//! [`scene`] is the line-oriented file format that names them.

pub mod expr;
pub mod scene;

pub use expr::{eval_expr, parse_expr, Expr};
pub use scene::{parse_scene, Scene, SceneCurve, SceneSurface};
