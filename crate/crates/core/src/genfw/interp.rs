use std::collections::BTreeMap;

use super::plan::GenerationPlan;
use super::run::{Artifact, ArtifactSet, GenerationError};
use crate::binding::{BoundArchitecture, ImplKind};
use crate::model::{dataflow_graph, flatten_architecture, DataType};
use crate::simulator::manifest::{
    CompositeEntry, DataModelEntry, EnumEntry, FieldEntry, InstanceEntry, LinkEntry, Manifest,
    PortEntry, RecordEntry, VarEntry,
};

pub const MANIFEST_FILE: &str = "manifest.json";

fn emit_err(msg: impl Into<String>) -> GenerationError {
    GenerationError::Emit(msg.into())
}

fn type_name(t: &DataType) -> Result<String, GenerationError> {
    match t {
        DataType::Param(p) => Err(emit_err(format!("uninstantiated type parameter `{p}`"))),
        t => Ok(t.name().to_string()),
    }
}

/// Builds the manifest for the interp RTS. Stub traces are read from the
/// binding's directory and returned as extra artifacts under `stubs/`.
pub fn emit_interp_manifest(
    plan: &GenerationPlan,
    bound: &BoundArchitecture,
) -> Result<ArtifactSet, GenerationError> {
    let arch = &bound.architecture;
    let net = flatten_architecture(arch).map_err(|e| emit_err(e.to_string()))?;
    let mut files = Vec::new();
    let mut copied: BTreeMap<String, String> = BTreeMap::new();

    let ports = |ps: &[crate::model::ResolvedPort]| -> Result<Vec<PortEntry>, GenerationError> {
        ps.iter()
            .map(|p| {
                Ok(PortEntry {
                    name: p.name.clone(),
                    direction: p.direction,
                    ty: type_name(&p.ty)?,
                })
            })
            .collect()
    };

    let mut instances = Vec::new();
    for i in &net.instances {
        let mut entry = InstanceEntry {
            path: i.path.clone(),
            ty: i.component_type.clone(),
            ports: ports(&i.ports)?,
            params: i.params.iter().cloned().collect(),
            behavior: None,
            vars: None,
            stub: None,
        };
        match &i.behavior {
            Some(b) => {
                if !plan.behavior_gens.contains_key(&b.language) {
                    return Err(emit_err(format!(
                        "no behavior generator selected for language `{}`",
                        b.language
                    )));
                }
                entry.behavior = Some(b.clone());
                entry.vars = Some(
                    i.var_init
                        .iter()
                        .map(|(n, t, v)| {
                            Ok(VarEntry {
                                name: n.clone(),
                                ty: type_name(t)?,
                                init: v.clone(),
                            })
                        })
                        .collect::<Result<_, GenerationError>>()?,
                );
            }
            None => {
                let imp = bound.resolved_impls.get(&i.component_type).ok_or_else(|| {
                    emit_err(format!("`{}` has neither behavior nor binding", i.component_type))
                })?;
                if imp.kind == ImplKind::Extern {
                    return Err(emit_err(format!(
                        "`{}` is bound to extern implementation \"{}\", which the interp RTS cannot run",
                        i.component_type, imp.locator
                    )));
                }
                if !copied.contains_key(&i.component_type) {
                    let src = bound.base_dir.join(&imp.locator);
                    let content = std::fs::read(&src).map_err(|e| {
                        emit_err(format!("cannot read stub trace {}: {e}", src.display()))
                    })?;
                    let rel = format!("stubs/{}.csv", i.component_type);
                    files.push(Artifact::new(&rel, content));
                    copied.insert(i.component_type.clone(), rel);
                }
                entry.stub = copied.get(&i.component_type).cloned();
            }
        }
        instances.push(entry);
    }

    let mut schedules = BTreeMap::new();
    for c in &net.composites {
        let ty = arch
            .component(&c.component_type)
            .ok_or_else(|| emit_err(format!("unknown component `{}`", c.component_type)))?;
        let order = match &ty.schedule {
            Some(s) => s.order.clone(),
            None => dataflow_graph(arch, ty)
                .least_topological_order()
                .ok_or_else(|| emit_err(format!("`{}` has an instant cycle", ty.name)))?,
        };
        schedules.insert(c.path.clone(), order);
    }

    let mut data_model = DataModelEntry::default();
    for m in &arch.data_models {
        for e in &m.enums {
            data_model.enums.push(EnumEntry {
                name: e.name.clone(),
                literals: e.literals.clone(),
            });
        }
        for r in &m.records {
            data_model.records.push(RecordEntry {
                name: r.name.clone(),
                fields: r
                    .fields
                    .iter()
                    .map(|f| FieldEntry {
                        name: f.name.clone(),
                        ty: f.ty.to_string(),
                    })
                    .collect(),
            });
        }
    }

    let manifest = Manifest {
        rts: plan.rts.clone(),
        root: net.root_type.clone(),
        boundary_ports: ports(&net.boundary_ports)?,
        instances,
        composites: net
            .composites
            .iter()
            .map(|c| CompositeEntry {
                path: c.path.clone(),
                ty: c.component_type.clone(),
                children: c.children.clone(),
            })
            .collect(),
        links: net
            .links
            .iter()
            .map(|l| LinkEntry {
                from: l.from.to_string(),
                to: l.to.to_string(),
                delayed: l.delayed,
            })
            .collect(),
        schedules,
        data_model,
    };
    let json = manifest
        .to_json_string()
        .map_err(|e| emit_err(format!("cannot serialize manifest: {e}")))?;
    files.push(Artifact::new(MANIFEST_FILE, json.into_bytes()));
    Ok(ArtifactSet::new(files, Some(MANIFEST_FILE.to_string())))
}
