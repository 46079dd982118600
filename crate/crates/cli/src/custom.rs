//! Custom families from JSON.
//!
//! ```json
//! {
//!   "name": "shifted_hermite",
//!   "alpha": [[["-1"], ["1"]], [["0"], ["1"]], [["0"], ["1"]]],
//!   "beta":  [[["0"], ["1"]], [["2"], ["1"]]],
//!   "params": {},
//!   "start_index": 0
//! }
//! ```
//!
//! `alpha[j]` is the coefficient of `x^j` in `A_n` and `beta[j]` that of
//! `x^j` in `B_n`, each a pair `[numerator, denominator]` of coefficient
//! lists in ascending powers of `n`. Coefficients are `"p/q"` strings or
//! JSON integers.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::Value;
use zerodist_core::util::parse_rational;
use zerodist_core::{FamilySpec, RationalFnOfN};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomFile {
    name: String,
    alpha: Vec<[Vec<Value>; 2]>,
    beta: Vec<[Vec<Value>; 2]>,
    #[serde(default)]
    params: BTreeMap<String, Value>,
    #[serde(default)]
    start_index: u64,
}

fn coefficient(v: &Value) -> anyhow::Result<BigRational> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(BigRational::from_integer(BigInt::from(i))),
            None => bail!("coefficient {n} is not an integer; write it as a \"p/q\" string"),
        },
        other => bail!("coefficient {other} is neither a string nor an integer"),
    }
}

fn rational_fn(pair: &[Vec<Value>; 2]) -> anyhow::Result<RationalFnOfN> {
    let num = pair[0].iter().map(coefficient).collect::<anyhow::Result<Vec<_>>>()?;
    let den = pair[1].iter().map(coefficient).collect::<anyhow::Result<Vec<_>>>()?;
    Ok(RationalFnOfN::from_coeffs(num, den)?)
}

pub fn parse(text: &str) -> anyhow::Result<FamilySpec> {
    let file: CustomFile = serde_json::from_str(text)?;
    if file.alpha.len() != 3 {
        bail!("alpha needs 3 entries (x^0, x^1, x^2), got {}", file.alpha.len());
    }
    if file.beta.len() != 2 {
        bail!("beta needs 2 entries (x^0, x^1), got {}", file.beta.len());
    }
    let alpha = [rational_fn(&file.alpha[0])?, rational_fn(&file.alpha[1])?, rational_fn(&file.alpha[2])?];
    let beta = [rational_fn(&file.beta[0])?, rational_fn(&file.beta[1])?];
    let params = file
        .params
        .iter()
        .map(|(k, v)| Ok((k.clone(), coefficient(v).with_context(|| format!("param {k}"))?)))
        .collect::<anyhow::Result<BTreeMap<_, _>>>()?;
    Ok(FamilySpec::new(file.name, alpha, beta, params, file.start_index)?)
}

pub fn load(path: &Path) -> anyhow::Result<FamilySpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("custom family {}", path.display()))
}
