use surfloss_bem::dump::write_solution_csv;
use surfloss_bem::mesh::coax;
use surfloss_bem::solve_mesh;

#[test]
fn csv_has_header_and_one_row_per_element() {
    let mesh = coax(1.0, 3.0, 40);
    let s = solve_mesh(&mesh).unwrap();
    let mut buf = Vec::new();
    write_solution_csv(&mut buf, &mesh, &s).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,y,width,charge,field,side");
    assert_eq!(lines.len(), 81);
    assert!(lines[1].ends_with(",lateral") && lines[80].ends_with(",outer"));
    assert!(!text.contains('\r'));
}
