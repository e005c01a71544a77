//! Exact linear algebra, quiver coverings, radical complexes and Auslander-Reiten
//! data for radical-square-zero path algebras.

pub mod algebra;
pub mod arwindow;
pub mod complex;
pub mod cover;
pub mod derived;
pub mod field;
pub mod koszul;
pub mod matrix;
pub mod quiver;
pub mod rep;
pub mod sample;
