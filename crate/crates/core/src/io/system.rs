use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::algebra::{LaurentPolynomial, TimeExpression};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::fields::VectorField;

/// Parses `text` as a polynomial in `variables`. Negative exponents are
/// rejected unless `allow_laurent` is set.
pub fn parse_polynomial(
    text: &str,
    variables: &[String],
    allow_laurent: bool,
) -> Result<LaurentPolynomial> {
    let p = Expr::parse(text)?.to_polynomial(variables)?;
    if !allow_laurent && p.has_negative_exponent() {
        return Err(Error::LaurentNotAllowed {
            text: text.to_string(),
        });
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub components: Vec<String>,
}

/// Operator system input: the fields `ξ_k` split per operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDocument {
    pub variables: Vec<String>,
    #[serde(default)]
    pub allow_laurent: bool,
    pub operators: Vec<OperatorEntry>,
    /// The time factors `T_k(t)`. Carried along, never used by the checker.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_coefficients: Option<Vec<String>>,
}

const KEYS: [&str; 4] = [
    "variables",
    "allow_laurent",
    "operators",
    "time_coefficients",
];

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn string_list(value: &Value, path: &str, errors: &mut Vec<String>) -> Option<Vec<String>> {
    let Some(items) = value.as_array() else {
        errors.push(format!("{path}: expected an array of strings"));
        return None;
    };
    let mut out = Vec::with_capacity(items.len());
    let mut ok = true;
    for (i, item) in items.iter().enumerate() {
        match item.as_str() {
            Some(s) => out.push(s.to_string()),
            None => {
                errors.push(format!("{path}[{i}]: expected a string"));
                ok = false;
            }
        }
    }
    ok.then_some(out)
}

/// Parses and validates a system document, reporting every violation.
pub fn parse_system(text: &str) -> Result<SystemDocument> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Schema(vec![format!("invalid JSON: {e}")]))?;
    let Some(obj) = value.as_object() else {
        return Err(Error::Schema(vec!["top level: expected an object".into()]));
    };
    let mut errors = Vec::new();
    for key in obj.keys() {
        if !KEYS.contains(&key.as_str()) {
            errors.push(format!("{key}: unknown field"));
        }
    }

    let variables = match obj.get("variables") {
        None => {
            errors.push("variables: missing".into());
            None
        }
        Some(v) => string_list(v, "variables", &mut errors),
    };
    if let Some(vars) = &variables {
        if vars.is_empty() {
            errors.push("variables: must not be empty".into());
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                errors.push(format!("variables[{i}]: `{v}` is not an identifier"));
            }
            if vars[..i].contains(v) {
                errors.push(format!("variables[{i}]: duplicate name `{v}`"));
            }
        }
    }

    let allow_laurent = match obj.get("allow_laurent") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(_) => {
            errors.push("allow_laurent: expected a boolean".into());
            false
        }
    };

    let operators = operators(obj, variables.as_deref(), allow_laurent, &mut errors);

    let time_coefficients = match obj.get("time_coefficients") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let list = string_list(v, "time_coefficients", &mut errors);
            if let Some(list) = &list {
                for (i, s) in list.iter().enumerate() {
                    if let Err(e) = TimeExpression::parse(s) {
                        errors.push(format!("time_coefficients[{i}]: {e}"));
                    }
                }
                if let Some(ops) = &operators {
                    if list.len() != ops.len() {
                        errors.push(format!(
                            "time_coefficients: expected {} entries, one per operator, found {}",
                            ops.len(),
                            list.len()
                        ));
                    }
                }
            }
            list
        }
    };

    if !errors.is_empty() {
        return Err(Error::Schema(errors));
    }
    Ok(SystemDocument {
        variables: variables.unwrap_or_default(),
        allow_laurent,
        operators: operators.unwrap_or_default(),
        time_coefficients,
    })
}

fn operators(
    obj: &Map<String, Value>,
    variables: Option<&[String]>,
    allow_laurent: bool,
    errors: &mut Vec<String>,
) -> Option<Vec<OperatorEntry>> {
    let Some(value) = obj.get("operators") else {
        errors.push("operators: missing".into());
        return None;
    };
    let Some(items) = value.as_array() else {
        errors.push("operators: expected an array".into());
        return None;
    };
    if items.is_empty() {
        errors.push("operators: must not be empty".into());
    }
    let mut out = Vec::new();
    for (k, item) in items.iter().enumerate() {
        let path = format!("operators[{k}]");
        let Some(op) = item.as_object() else {
            errors.push(format!("{path}: expected an object"));
            continue;
        };
        for key in op.keys() {
            if key != "label" && key != "components" {
                errors.push(format!("{path}.{key}: unknown field"));
            }
        }
        let label = match op.get("label") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => {
                errors.push(format!("{path}.label: expected a string"));
                None
            }
        };
        let components = match op.get("components") {
            None => {
                errors.push(format!("{path}.components: missing"));
                None
            }
            Some(v) => string_list(v, &format!("{path}.components"), errors),
        };
        let Some(components) = components else {
            continue;
        };
        if let Some(vars) = variables {
            if components.len() != vars.len() {
                errors.push(format!(
                    "{path}.components: expected {} components, one per variable, found {}",
                    vars.len(),
                    components.len()
                ));
            }
            let mut all_zero = true;
            for (i, c) in components.iter().enumerate() {
                match parse_polynomial(c, vars, allow_laurent) {
                    Ok(p) => all_zero &= p.is_zero(),
                    Err(e) => {
                        all_zero = false;
                        errors.push(format!("{path}.components[{i}]: {e}"));
                    }
                }
            }
            if all_zero && !components.is_empty() {
                errors.push(format!("{path}: the zero operator is not allowed"));
            }
        }
        out.push(OperatorEntry { label, components });
    }
    Some(out)
}

impl SystemDocument {
    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    pub fn fields(&self) -> Result<Vec<VectorField>> {
        self.operators
            .iter()
            .map(|op| {
                let comps = op
                    .components
                    .iter()
                    .map(|c| parse_polynomial(c, &self.variables, self.allow_laurent))
                    .collect::<Result<Vec<_>>>()?;
                Error::dims(self.variables.len(), comps.len())?;
                VectorField::new(comps)
            })
            .collect()
    }

    /// Human name of operator `k`: its label, or `X{k}`.
    pub fn label(&self, k: usize) -> String {
        self.operators
            .get(k)
            .and_then(|o| o.label.clone())
            .unwrap_or_else(|| format!("X{k}"))
    }
}
