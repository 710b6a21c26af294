//! CSV dump of a mesh and its solution.

use crate::error::BemError;
use crate::field::surface_field;
use crate::mesh::Mesh;
use crate::solve::ChargeSolution;
use std::io::Write;

/// One row per element: centre, width, charge, surface field, surface tag.
pub fn write_solution_csv<W: Write>(out: W, mesh: &Mesh, sol: &ChargeSolution) -> Result<(), BemError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["x", "y", "width", "charge", "field", "side"])?;
    for (i, e) in mesh.elements.iter().enumerate() {
        let c = e.center();
        w.write_record([
            format!("{:e}", c[0]),
            format!("{:e}", c[1]),
            format!("{:e}", e.width()),
            format!("{:e}", sol.charges[i]),
            format!("{:e}", surface_field(mesh, sol, i)),
            e.surface.label().to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
