#include <cstdio>
int main(){ std::puts("ectk"); return 0; }
