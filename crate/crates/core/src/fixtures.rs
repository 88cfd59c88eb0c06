//! Bundled example programs and knowledge bases.

use crate::engine::{build_model, PreferentialModel};
use crate::model::{ConditionalKB, Program};
use crate::parser::{parse_kb, parse_program};

pub const CINEMA_PROGRAM: &str = include_str!("../fixtures/cinema.lp");
pub const CINEMA_KB: &str = include_str!("../fixtures/cinema.kb");
pub const STUDENTS_PROGRAM: &str = include_str!("../fixtures/students.lp");
pub const STUDENTS_KB: &str = include_str!("../fixtures/students.kb");
pub const HORSES_PROGRAM: &str = include_str!("../fixtures/horses.lp");
pub const HORSES_KB: &str = include_str!("../fixtures/horses.kb");
pub const BIRDS_PROGRAM: &str = include_str!("../fixtures/birds.lp");
pub const BIRDS_KB: &str = include_str!("../fixtures/birds.kb");

fn program(src: &str) -> Program {
    parse_program(src).expect("bundled program parses")
}

fn kb(src: &str) -> ConditionalKB {
    parse_kb(src).expect("bundled knowledge base parses")
}

pub fn cinema_program() -> Program {
    program(CINEMA_PROGRAM)
}

pub fn cinema_kb() -> ConditionalKB {
    kb(CINEMA_KB)
}

pub fn cinema_model() -> PreferentialModel {
    build_model(&cinema_program(), &cinema_kb()).expect("cinema program is consistent")
}

pub fn students_program() -> Program {
    program(STUDENTS_PROGRAM)
}

pub fn students_kb() -> ConditionalKB {
    kb(STUDENTS_KB)
}

pub fn horses_program() -> Program {
    program(HORSES_PROGRAM)
}

/// Ranked conditionals only.
pub fn horses_kb() -> ConditionalKB {
    kb(HORSES_KB)
}

pub fn birds_program() -> Program {
    program(BIRDS_PROGRAM)
}

pub fn birds_kb() -> ConditionalKB {
    kb(BIRDS_KB)
}

pub fn birds_model() -> PreferentialModel {
    build_model(&birds_program(), &birds_kb()).expect("birds program is consistent")
}
