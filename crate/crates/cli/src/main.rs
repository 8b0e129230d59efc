fn main() {
    std::process::exit(sharpflat::run(std::env::args_os()));
}
