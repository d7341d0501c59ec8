//! `--assert /pointer=value[:tolerance]` checks against the JSON output.

use serde_json::Value;

fn check(summary: &Value, spec: &str) -> Result<(), String> {
    let (pointer, expected) = spec
        .split_once('=')
        .ok_or_else(|| format!("`{spec}`: expected /pointer=value"))?;
    let actual = summary
        .pointer(pointer)
        .ok_or_else(|| format!("`{pointer}` is not in the output"))?;
    let (value, tolerance) = match expected.rsplit_once(':') {
        Some((v, t)) => match t.parse::<f64>() {
            Ok(t) => (v, Some(t)),
            Err(_) => (expected, None),
        },
        None => (expected, None),
    };
    match (actual, value.parse::<f64>()) {
        (Value::Number(n), Ok(target)) => {
            let got = n.as_f64().unwrap_or(f64::NAN);
            let tol = tolerance.unwrap_or(0.0);
            if (got - target).abs() <= tol {
                Ok(())
            } else {
                Err(format!("{pointer} = {got}, expected {target} +- {tol}"))
            }
        }
        (Value::String(s), _) if s == value => Ok(()),
        (Value::Bool(b), _) if b.to_string() == value => Ok(()),
        (other, _) => Err(format!("{pointer} = {other}, expected {value}")),
    }
}

pub fn check_all(summary: &Value, specs: &[String]) -> Result<(), Vec<String>> {
    let failures: Vec<String> = specs.iter().filter_map(|s| check(summary, s).err()).collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    }
}
