use alloc::string::String;
use core::fmt;

/// Errors produced by graph, code and decoder construction.
///
/// Decoder rejections are values (`None` / `Reject`), not errors; this type
/// covers malformed inputs and exhausted resource caps.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A precondition on a parameter was violated.
    InvalidParameter(String),
    /// The alphabet size is not a prime power.
    NotPrimePower(u64),
    /// A vector had the wrong length.
    LengthMismatch { expected: usize, got: usize },
    /// Random graph sampling kept hitting parallel edges.
    RetriesExhausted { attempts: usize },
    /// Power iteration did not reach the requested tolerance.
    NoConvergence { iters: usize },
    /// A codeword table or enumeration would exceed its configured cap.
    CapExceeded { required: u128, cap: u128 },
    /// Random code search ran out of trials; carries the best distance and
    /// list size seen.
    SearchExhausted {
        trials: usize,
        best_dist: usize,
        best_list: usize,
    },
    /// A local list at some vertex does not fit in the CSP domain.
    ListTooLarge {
        vertex: usize,
        list_len: usize,
        ell: usize,
    },
    /// Malformed text input.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            Error::RetriesExhausted { attempts } => {
                write!(f, "no simple graph found after {attempts} attempts")
            }
            Error::NoConvergence { iters } => {
                write!(f, "power iteration did not converge in {iters} iterations")
            }
            Error::CapExceeded { required, cap } => {
                write!(f, "size {required} exceeds configured cap {cap}")
            }
            Error::SearchExhausted {
                trials,
                best_dist,
                best_list,
            } => write!(
                f,
                "search exhausted after {trials} trials \
                 (best candidate: distance {best_dist}, list size {best_list})"
            ),
            Error::ListTooLarge {
                vertex,
                list_len,
                ell,
            } => write!(
                f,
                "local list at vertex {vertex} has {list_len} entries, domain size is {ell}"
            ),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
