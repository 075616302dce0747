pub mod ast;
pub mod commands;
pub mod eval;
pub mod parser;
pub mod render;
