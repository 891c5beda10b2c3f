//! Tick-based interpreter for manifests produced by the interp emitter.

mod csv;
pub mod manifest;

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::behaviors::{activity_step, automaton_step, StepError, ValueEnv};
use crate::model::{join_path, BehaviorModel, DataType, Direction, Value};

pub use self::csv::{format_cell, parse_cell, split_cells};
pub use manifest::{Manifest, INTERP_RTS};
use manifest::{DataModelEntry, InstanceEntry, PortEntry};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid manifest: {0}")]
    Manifest(String),
    #[error("unsupported rts `{0}` (expected `{INTERP_RTS}`)")]
    UnknownRts(String),
    #[error("{file}:{line}: {message}")]
    Trace {
        file: String,
        line: usize,
        message: String,
    },
    #[error("tick {tick}, instance `{path}`: {source}")]
    Step {
        tick: usize,
        path: String,
        source: StepError,
    },
}

/// A rectangular table of port values, one row per tick.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<Value>>>,
}

impl Trace {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| format_cell(v.as_ref())).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Value of `column` at `tick`; `None` when absent or out of range.
    pub fn value(&self, tick: usize, column: &str) -> Option<&Value> {
        let c = self.column(column)?;
        self.rows.get(tick)?.get(c)?.as_ref()
    }
}

/// Parses trace text whose header must list exactly `ports`, in order.
pub fn parse_trace(
    text: &str,
    file: &str,
    ports: &[(String, DataType)],
    dm: &DataModelEntry,
) -> Result<Trace, SimError> {
    let err = |line: usize, message: String| SimError::Trace {
        file: file.to_string(),
        line,
        message,
    };
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l));
    let header = lines.next().unwrap_or("");
    let columns: Vec<String> = if header.is_empty() {
        Vec::new()
    } else {
        header.split(',').map(str::to_string).collect()
    };
    let expected: Vec<&str> = ports.iter().map(|(n, _)| n.as_str()).collect();
    if columns != expected {
        return Err(err(
            1,
            format!(
                "header must be `{}`, found `{}`",
                expected.join(","),
                header
            ),
        ));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let n = i + 2;
        if ports.is_empty() {
            if !line.is_empty() {
                return Err(err(n, "trace without columns must have empty rows".into()));
            }
            rows.push(Vec::new());
            continue;
        }
        let cells = split_cells(line).map_err(|m| err(n, m))?;
        if cells.len() != ports.len() {
            return Err(err(
                n,
                format!("expected {} cells, found {}", ports.len(), cells.len()),
            ));
        }
        let row = cells
            .iter()
            .zip(ports)
            .map(|(c, (name, ty))| parse_cell(c, ty, dm).map_err(|m| err(n, format!("{name}: {m}"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Trace { columns, rows })
}

fn read(path: &Path) -> Result<String, SimError> {
    std::fs::read_to_string(path).map_err(|source| SimError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn typed_ports(
    ports: &[PortEntry],
    dir: Direction,
    dm: &DataModelEntry,
) -> Result<Vec<(String, DataType)>, SimError> {
    ports
        .iter()
        .filter(|p| p.direction == dir)
        .map(|p| {
            dm.data_type(&p.ty)
                .map(|t| (p.name.clone(), t))
                .ok_or_else(|| SimError::Manifest(format!("unknown type `{}`", p.ty)))
        })
        .collect()
}

/// A manifest with its stub traces loaded, ready to run.
#[derive(Debug, Clone)]
pub struct SimManifest {
    pub manifest: Manifest,
    /// Stub trace per stub instance path.
    pub stubs: BTreeMap<String, Trace>,
}

impl SimManifest {
    /// Validates `manifest` and loads its stub traces relative to `base_dir`.
    pub fn new(manifest: Manifest, base_dir: &Path) -> Result<SimManifest, SimError> {
        if manifest.rts != INTERP_RTS {
            return Err(SimError::UnknownRts(manifest.rts));
        }
        let mut stubs = BTreeMap::new();
        let mut cache: BTreeMap<String, Trace> = BTreeMap::new();
        for i in &manifest.instances {
            match (&i.behavior, &i.stub) {
                (Some(_), None) => {}
                (None, Some(rel)) => {
                    if !cache.contains_key(rel) {
                        let path: PathBuf = base_dir.join(rel);
                        let ports = typed_ports(&i.ports, Direction::Out, &manifest.data_model)?;
                        let text = read(&path)?;
                        let t = parse_trace(
                            &text,
                            &path.display().to_string(),
                            &ports,
                            &manifest.data_model,
                        )?;
                        cache.insert(rel.clone(), t);
                    }
                    stubs.insert(i.path.clone(), cache[rel].clone());
                }
                _ => {
                    return Err(SimError::Manifest(format!(
                        "instance `{}` needs exactly one of behavior and stub",
                        i.path
                    )))
                }
            }
        }
        Ok(SimManifest { manifest, stubs })
    }

    /// Typed root in-ports in declaration order.
    pub fn input_ports(&self) -> Result<Vec<(String, DataType)>, SimError> {
        typed_ports(
            &self.manifest.boundary_ports,
            Direction::In,
            &self.manifest.data_model,
        )
    }

    /// Parses an input trace for the root in-ports.
    pub fn parse_inputs(&self, text: &str, file: &str) -> Result<Trace, SimError> {
        parse_trace(text, file, &self.input_ports()?, &self.manifest.data_model)
    }
}

/// Reads a manifest file; stub paths are relative to its directory.
pub fn load_manifest(path: &Path) -> Result<SimManifest, SimError> {
    let text = read(path)?;
    let manifest: Manifest =
        serde_json::from_str(&text).map_err(|e| SimError::Manifest(e.to_string()))?;
    let base = path.parent().unwrap_or(Path::new(""));
    SimManifest::new(manifest, base)
}

fn addr(path: &str, port: &str) -> String {
    if path.is_empty() {
        port.to_string()
    } else {
        format!("{path}.{port}")
    }
}

/// Atomic instance paths in execution order: every composite's schedule
/// expanded depth-first.
fn expand_schedule(m: &Manifest) -> Result<Vec<String>, SimError> {
    if m.composites.is_empty() {
        return Ok(m.instances.iter().map(|i| i.path.clone()).collect());
    }
    let atomic: BTreeSet<&str> = m.instances.iter().map(|i| i.path.as_str()).collect();
    let mut out = Vec::new();
    let mut stack = vec![String::new()];
    let mut pending: Vec<Vec<String>> = Vec::new();
    // Iterative depth-first expansion to stay safe on deep hierarchies.
    while let Some(path) = stack.pop() {
        let order = m
            .schedules
            .get(&path)
            .ok_or_else(|| SimError::Manifest(format!("no schedule for composite `{path}`")))?;
        pending.push(order.iter().rev().map(|c| join_path(&path, c)).collect());
        while let Some(top) = pending.last_mut() {
            let Some(child) = top.pop() else {
                pending.pop();
                continue;
            };
            if atomic.contains(child.as_str()) {
                out.push(child);
            } else {
                stack.push(child);
                break;
            }
        }
    }
    if out.len() != m.instances.len() {
        return Err(SimError::Manifest(
            "schedules do not cover every atomic instance exactly once".into(),
        ));
    }
    Ok(out)
}

struct Atom<'a> {
    entry: &'a InstanceEntry,
    model: Option<&'a BehaviorModel>,
    state: Option<String>,
    vars: ValueEnv,
    params: ValueEnv,
}

struct Ports<'a> {
    values: BTreeMap<String, Option<Value>>,
    links: BTreeMap<&'a str, Vec<(&'a str, bool)>>,
    buffer: Vec<(String, Value)>,
    /// Instances already executed this tick, for the write-before-read check.
    ran: BTreeSet<String>,
    owner: BTreeMap<String, String>,
}

impl Ports<'_> {
    fn write(&mut self, at: &str, v: Value) {
        self.values.insert(at.to_string(), Some(v.clone()));
        let Some(targets) = self.links.get(at) else {
            return;
        };
        for (to, delayed) in targets.clone() {
            if delayed {
                self.buffer.push((to.to_string(), v.clone()));
            } else {
                debug_assert!(
                    self.owner.get(to).is_none_or(|o| !self.ran.contains(o)),
                    "instant write to `{to}` after its reader ran"
                );
                self.values.insert(to.to_string(), Some(v.clone()));
            }
        }
    }

    fn get(&self, at: &str) -> Option<&Value> {
        self.values.get(at).and_then(Option::as_ref)
    }
}

/// Runs `ticks` synchronous reactions. Each tick delivers delayed values,
/// applies the boundary inputs and stub rows, runs the behavioral
/// instances in schedule order and records every port.
pub fn simulate(
    sim: &SimManifest,
    ticks: usize,
    inputs: Option<&Trace>,
) -> Result<Trace, SimError> {
    let m = &sim.manifest;
    let order = expand_schedule(m)?;
    let mut atoms: BTreeMap<&str, Atom<'_>> = BTreeMap::new();
    for i in &m.instances {
        let model = i.behavior.as_ref().map(|b| &b.model);
        let state = match model {
            Some(BehaviorModel::Automaton(a)) => Some(a.initial.clone()),
            _ => None,
        };
        let mut vars = ValueEnv::new();
        for v in i.vars.iter().flatten() {
            vars.set(&v.name, Some(v.init.clone()));
        }
        let params: ValueEnv = i.params.iter().map(|(k, v)| (k.clone(), Some(v.clone()))).collect();
        atoms.insert(
            i.path.as_str(),
            Atom {
                entry: i,
                model,
                state,
                vars,
                params,
            },
        );
    }

    let mut columns: BTreeSet<String> = BTreeSet::new();
    let mut owner = BTreeMap::new();
    for i in &m.instances {
        for p in &i.ports {
            columns.insert(addr(&i.path, &p.name));
            owner.insert(addr(&i.path, &p.name), i.path.clone());
        }
    }
    for p in &m.boundary_ports {
        columns.insert(p.name.clone());
    }
    let columns: Vec<String> = columns.into_iter().collect();
    let mut links: BTreeMap<&str, Vec<(&str, bool)>> = BTreeMap::new();
    for l in &m.links {
        links
            .entry(l.from.as_str())
            .or_default()
            .push((l.to.as_str(), l.delayed));
    }
    let mut ports = Ports {
        values: BTreeMap::new(),
        links,
        buffer: Vec::new(),
        ran: BTreeSet::new(),
        owner,
    };
    let input_ports = sim.input_ports()?;

    let mut rows = Vec::with_capacity(ticks);
    for tick in 0..ticks {
        ports.ran.clear();
        for (to, v) in std::mem::take(&mut ports.buffer) {
            ports.values.insert(to, Some(v));
        }
        if let Some(inp) = inputs {
            if let Some(row) = inp.rows.get(tick) {
                for ((name, _), v) in input_ports.iter().zip(row) {
                    if let Some(v) = v {
                        ports.write(name, v.clone());
                    }
                }
            }
        }
        for (path, trace) in &sim.stubs {
            let Some(row) = trace.rows.get(tick) else {
                continue;
            };
            for (col, v) in trace.columns.iter().zip(row) {
                if let Some(v) = v {
                    ports.write(&addr(path, col), v.clone());
                }
            }
        }
        for path in &order {
            let atom = atoms
                .get_mut(path.as_str())
                .ok_or_else(|| SimError::Manifest(format!("unknown instance `{path}`")))?;
            ports.ran.insert(path.clone());
            let Some(model) = atom.model else {
                continue;
            };
            let mut env = atom.params.clone();
            for p in atom.entry.ports.iter().filter(|p| p.direction == Direction::In) {
                env.set(&p.name, ports.get(&addr(path, &p.name)).cloned());
            }
            let step_err = |source| SimError::Step {
                tick,
                path: path.clone(),
                source,
            };
            let result = match model {
                BehaviorModel::Automaton(a) => {
                    let state = atom.state.as_deref().unwrap_or(&a.initial);
                    automaton_step(a, state, &atom.vars, &env).map_err(step_err)?
                }
                BehaviorModel::Activity(g) => activity_step(g, &atom.vars, &env).map_err(step_err)?,
            };
            atom.vars = result.vars;
            if result.next_state.is_some() {
                atom.state = result.next_state;
            }
            for (name, v) in result.outputs.iter() {
                if let Some(v) = v {
                    ports.write(&addr(path, name), v.clone());
                }
            }
        }
        rows.push(
            columns
                .iter()
                .map(|c| ports.get(c).cloned())
                .collect::<Vec<_>>(),
        );
        ports.values.clear();
    }
    Ok(Trace { columns, rows })
}
