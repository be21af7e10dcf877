// Placeholder main; the full command-line front end is assembled after the
// library modules are in place.
int main() { return 0; }
