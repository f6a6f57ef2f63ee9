//! Text format for spring networks.
//!
//! ```text
//! springs 4        # node count
//! 1 2 1            # spring between nodes 1 and 2 with stiffness 1
//! 2 3 3/2
//! mass 2 1         # optional; masses default to 1
//! ```

use std::path::Path;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::massspring::SpringNetwork;

fn err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, column: 1, message: message.into() })
}

fn rational(word: &str, line: usize) -> Result<BigRational> {
    word.parse::<BigRational>().or_else(|_| err(line, format!("invalid rational {word:?}")))
}

fn index(word: &str, line: usize) -> Result<usize> {
    word.parse::<usize>().or_else(|_| err(line, format!("invalid node index {word:?}")))
}

pub fn parse_network(text: &str) -> Result<SpringNetwork> {
    let mut net: Option<SpringNetwork> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let words: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        let Some(net) = net.as_mut() else {
            match words.as_slice() {
                ["springs", n] => {
                    net = Some(SpringNetwork::new(index(n, line)?)?);
                    continue;
                }
                _ => return err(line, "expected a 'springs n' header"),
            }
        };
        let located = |e: Error| match e {
            Error::Domain(m) => Error::Parse { line, column: 1, message: m },
            other => other,
        };
        match words.as_slice() {
            ["mass", i, m] => net.set_mass(index(i, line)?, rational(m, line)?).map_err(located)?,
            [i, j, s] => net.add_spring(index(i, line)?, index(j, line)?, rational(s, line)?).map_err(located)?,
            _ => return err(line, "expected 'i j stiffness' or 'mass i m'"),
        }
    }
    net.map_or_else(|| err(1, "empty network file"), Ok)
}

pub fn read_network_file(path: impl AsRef<Path>) -> Result<SpringNetwork> {
    parse_network(&std::fs::read_to_string(path)?)
}
