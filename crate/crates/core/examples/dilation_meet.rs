// The glb of two dilations is the dilation by the common offsets.

use joinendo::glb::Algorithm;
use joinendo::morphology::{dilate, meet_of_dilations, BinaryImage, StructuringElement};

pub fn run_example() -> joinendo::Result<()> {
    let image = BinaryImage::parse_text("#..\n...\n..#\n")?;
    let cross: StructuringElement = "cross".parse()?;
    let right: StructuringElement = "0,0;1,0;1,1".parse()?;
    println!("image\n{image}");
    println!("dilated by cross\n{}", dilate(&image, &cross));
    println!("dilated by 0,0;1,0;1,1\n{}", dilate(&image, &right));

    let r = meet_of_dilations(&image, &[cross, right], Algorithm::DMeetPlus)?;
    println!("glb on the 512-element pixel lattice\n{}", r.via_lattice);
    println!("dilation by the intersection\n{}", r.via_intersection);
    assert!(r.agree());

    println!("{}", image.to_pbm());
    Ok(())
}

fn main() -> joinendo::Result<()> {
    run_example()
}
