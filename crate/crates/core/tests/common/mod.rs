#![allow(dead_code)]

pub mod exactnum;
pub mod zariski;
