//! Trace files: comma-separated cells where an empty cell means the port
//! carried no value and strings are always double-quoted. A quoted empty
//! string (`""`) therefore stays distinct from absence.

use crate::model::{DataType, Value};

use super::manifest::DataModelEntry;

/// Splits one line into raw cells. Quotes are only special at the start
/// of a cell; inside a quoted cell `""` stands for one quote.
pub fn split_cells(line: &str) -> Result<Vec<String>, String> {
    let mut cells = Vec::new();
    let mut chars = line.chars().peekable();
    loop {
        let mut cell = String::new();
        if chars.peek() == Some(&'"') {
            cell.push(chars.next().unwrap_or('"'));
            loop {
                match chars.next() {
                    None => return Err("unterminated quoted cell".into()),
                    Some('"') if chars.peek() == Some(&'"') => {
                        chars.next();
                        cell.push_str("\"\"");
                    }
                    Some('"') => {
                        cell.push('"');
                        break;
                    }
                    Some(c) => cell.push(c),
                }
            }
            match chars.next() {
                None => {
                    cells.push(cell);
                    return Ok(cells);
                }
                Some(',') => cells.push(cell),
                Some(c) => return Err(format!("unexpected `{c}` after quoted cell")),
            }
        } else {
            loop {
                match chars.next() {
                    None => {
                        cells.push(cell);
                        return Ok(cells);
                    }
                    Some(',') => break,
                    Some(c) => cell.push(c),
                }
            }
            cells.push(cell);
        }
    }
}

/// Parses one raw cell as a value of `ty`; the empty cell is `None`.
pub fn parse_cell(raw: &str, ty: &DataType, dm: &DataModelEntry) -> Result<Option<Value>, String> {
    if raw.is_empty() {
        return Ok(None);
    }
    let v = match ty {
        DataType::Int => Value::Int(
            raw.parse::<i64>()
                .map_err(|_| format!("`{raw}` is not an Int"))?,
        ),
        DataType::Bool => match raw {
            "true" => Value::Bool(true),
            "false" => Value::Bool(false),
            _ => return Err(format!("`{raw}` is not a Bool (expected true or false)")),
        },
        DataType::String => {
            let inner = raw
                .strip_prefix('"')
                .and_then(|r| r.strip_suffix('"'))
                .filter(|_| raw.len() >= 2)
                .ok_or_else(|| format!("String cell `{raw}` must be double-quoted"))?;
            Value::Str(inner.replace("\"\"", "\""))
        }
        DataType::Enum(name) => {
            let lits = dm
                .enum_literals(name)
                .ok_or_else(|| format!("unknown enumeration `{name}`"))?;
            if !lits.iter().any(|l| l == raw) {
                return Err(format!("`{raw}` is not a literal of {name}"));
            }
            Value::enum_lit(name, raw)
        }
        DataType::Record(name) => {
            return Err(format!("record cells of type {name} are not supported in input traces"))
        }
        DataType::Param(p) => return Err(format!("uninstantiated type parameter `{p}`")),
    };
    Ok(Some(v))
}

/// Renders a value as a trace cell.
pub fn format_cell(v: Option<&Value>) -> String {
    match v {
        None => String::new(),
        Some(Value::Str(s)) => format!("\"{}\"", s.replace('"', "\"\"")),
        Some(v) => v.to_string(),
    }
}
