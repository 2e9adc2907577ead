//! Write an OBJ scene of a cataloged arrangement.

use horopack::cli::scene_obj;
use horopack::coxeter::SchlafliSymbol;

fn main() -> horopack::Result<()> {
    let mut args = std::env::args().skip(1);
    let tiling: SchlafliSymbol = args.next().unwrap_or_else(|| "336".into()).parse()?;
    let label = args.next().unwrap_or_else(|| "B2".into());
    let path = args.next().unwrap_or_else(|| format!("scene_{}_{label}.obj", tiling.0.map(|d| d.to_string()).concat()));
    let obj = scene_obj(tiling, &label, 64, 32)?;
    std::fs::write(&path, &obj)?;
    let objects = obj.lines().filter(|l| l.starts_with("o ")).count();
    println!("wrote {path}: {objects} objects, {} lines", obj.lines().count());
    Ok(())
}
