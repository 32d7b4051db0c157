#![allow(dead_code)]

pub mod cga;
pub mod control;
pub mod signal;
