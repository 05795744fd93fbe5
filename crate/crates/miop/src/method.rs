//! Construction routes shared by both kinds of quantum mechanics.

use crate::error::{MiopError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Original,
    CaseA,
    CaseB,
    SingleA,
    SingleB,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Original, Method::CaseA, Method::CaseB, Method::SingleA, Method::SingleB];

    pub fn code(self) -> &'static str {
        match self {
            Method::Original => "original",
            Method::CaseA => "caseA",
            Method::CaseB => "caseB",
            Method::SingleA => "singleA",
            Method::SingleB => "singleB",
        }
    }

    pub fn parse(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.code().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| MiopError::Config(format!("unknown method `{s}`")))
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}
