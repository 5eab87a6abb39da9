use std::path::Path;

use multibrot_core::arithmetic::ArithmeticError;
use multibrot_core::boettcher::BoettcherError;
use multibrot_core::config::ConfigError;
use multibrot_core::curves::CurveError;
use multibrot_core::exact::ParseError;
use multibrot_core::pcf::PcfError;
use multibrot_core::rays::RayError;
use multibrot_core::render::RenderError;
use multibrot_core::rotation::RotationError;
use serde_json::json;

/// A failure reported as `{"error": {"kind", "message"}}` on standard error.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    pub fn computation(kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
            exit_code: 1,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            kind: "usage",
            message: message.into(),
            exit_code: 2,
        }
    }

    pub fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        Self::computation("io", format!("{}: {e}", path.display()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind, "message": self.message } })
    }
}

macro_rules! from_error {
    ($($ty:ty => $kind:literal),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::computation($kind, e.to_string())
            }
        })*
    };
}

from_error! {
    ArithmeticError => "arithmetic",
    BoettcherError => "boettcher",
    CurveError => "curve",
    PcfError => "pcf",
    RayError => "rays",
    RenderError => "render",
    RotationError => "rotation",
    serde_json::Error => "json",
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::usage(e.to_string())
    }
}
