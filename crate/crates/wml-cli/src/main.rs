fn main() {
    println!("wml");
}
