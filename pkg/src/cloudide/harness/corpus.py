"""Fixed program corpus for the similarity suite.

Five exercise categories, each written three times (Java, C++, C), giving
fifteen deterministic programs. Every program reads only from argv and
stdin supplied by its case, so repeated runs must produce byte-identical
output.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SimilarityCase:
    name: str
    language: str  # "c" | "cpp" | "java"
    filename: str
    source: str
    args: str = ""
    stdin: str = ""


_BASIC_IO_C = """\
#include <stdio.h>
#include <string.h>

int main(void) {
    char name[128];
    char city[128];
    if (scanf("%127s", name) != 1) return 1;
    if (scanf("%127s", city) != 1) return 1;
    printf("hello %s from %s\\n", name, city);
    printf("name has %d letters\\n", (int)strlen(name));
    return 0;
}
"""

_BASIC_IO_CPP = """\
#include <iostream>
#include <string>

int main() {
    std::string name, city;
    if (!(std::cin >> name >> city)) return 1;
    std::cout << "hello " << name << " from " << city << "\\n";
    std::cout << "name has " << name.size() << " letters\\n";
    return 0;
}
"""

_BASIC_IO_JAVA = """\
import java.util.Scanner;

public class BasicIo {
    public static void main(String[] args) {
        Scanner in = new Scanner(System.in);
        String name = in.next();
        String city = in.next();
        System.out.println("hello " + name + " from " + city);
        System.out.println("name has " + name.length() + " letters");
    }
}
"""

_NUMERIC_C = """\
#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    if (argc < 3) return 2;
    long a = strtol(argv[1], 0, 10);
    long b = strtol(argv[2], 0, 10);
    printf("sum=%ld\\n", a + b);
    printf("diff=%ld\\n", a - b);
    printf("product=%ld\\n", a * b);
    if (b != 0) printf("quotient=%ld remainder=%ld\\n", a / b, a % b);
    return 0;
}
"""

_NUMERIC_CPP = """\
#include <cstdlib>
#include <iostream>

int main(int argc, char **argv) {
    if (argc < 3) return 2;
    long a = std::strtol(argv[1], 0, 10);
    long b = std::strtol(argv[2], 0, 10);
    std::cout << "sum=" << a + b << "\\n";
    std::cout << "diff=" << a - b << "\\n";
    std::cout << "product=" << a * b << "\\n";
    if (b != 0)
        std::cout << "quotient=" << a / b << " remainder=" << a % b << "\\n";
    return 0;
}
"""

_NUMERIC_JAVA = """\
public class NumericOp {
    public static void main(String[] args) {
        long a = Long.parseLong(args[0]);
        long b = Long.parseLong(args[1]);
        System.out.println("sum=" + (a + b));
        System.out.println("diff=" + (a - b));
        System.out.println("product=" + (a * b));
        if (b != 0) {
            System.out.println("quotient=" + (a / b) + " remainder=" + (a % b));
        }
    }
}
"""

_STRING_C = """\
#include <ctype.h>
#include <stdio.h>
#include <string.h>

int main(int argc, char **argv) {
    if (argc < 2) return 2;
    const char *word = argv[1];
    size_t n = strlen(word);
    size_t i;
    printf("length=%d\\n", (int)n);
    printf("upper=");
    for (i = 0; i < n; i++) putchar(toupper((unsigned char)word[i]));
    putchar('\\n');
    printf("reversed=");
    for (i = n; i > 0; i--) putchar(word[i - 1]);
    putchar('\\n');
    return 0;
}
"""

_STRING_CPP = """\
#include <algorithm>
#include <cctype>
#include <iostream>
#include <string>

int main(int argc, char **argv) {
    if (argc < 2) return 2;
    std::string word = argv[1];
    std::string upper = word;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    std::string reversed(word.rbegin(), word.rend());
    std::cout << "length=" << word.size() << "\\n";
    std::cout << "upper=" << upper << "\\n";
    std::cout << "reversed=" << reversed << "\\n";
    return 0;
}
"""

_STRING_JAVA = """\
public class StringOp {
    public static void main(String[] args) {
        String word = args[0];
        StringBuilder reversed = new StringBuilder(word).reverse();
        System.out.println("length=" + word.length());
        System.out.println("upper=" + word.toUpperCase());
        System.out.println("reversed=" + reversed);
    }
}
"""

_DECISION_C = """\
#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    if (argc < 2) return 2;
    long v = strtol(argv[1], 0, 10);
    if (v < 0) printf("sign=negative\\n");
    else if (v == 0) printf("sign=zero\\n");
    else printf("sign=positive\\n");
    printf("parity=%s\\n", (v % 2 == 0) ? "even" : "odd");
    return 0;
}
"""

_DECISION_CPP = """\
#include <cstdlib>
#include <iostream>

int main(int argc, char **argv) {
    if (argc < 2) return 2;
    long v = std::strtol(argv[1], 0, 10);
    if (v < 0) std::cout << "sign=negative\\n";
    else if (v == 0) std::cout << "sign=zero\\n";
    else std::cout << "sign=positive\\n";
    std::cout << "parity=" << ((v % 2 == 0) ? "even" : "odd") << "\\n";
    return 0;
}
"""

_DECISION_JAVA = """\
public class Decision {
    public static void main(String[] args) {
        long v = Long.parseLong(args[0]);
        if (v < 0) System.out.println("sign=negative");
        else if (v == 0) System.out.println("sign=zero");
        else System.out.println("sign=positive");
        System.out.println("parity=" + (v % 2 == 0 ? "even" : "odd"));
    }
}
"""

_LOOP_C = """\
#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    if (argc < 2) return 2;
    long n = strtol(argv[1], 0, 10);
    long total = 0;
    long i;
    for (i = 1; i <= n; i++) {
        total += i * i;
        printf("i=%ld square=%ld total=%ld\\n", i, i * i, total);
    }
    printf("final=%ld\\n", total);
    return 0;
}
"""

_LOOP_CPP = """\
#include <cstdlib>
#include <iostream>

int main(int argc, char **argv) {
    if (argc < 2) return 2;
    long n = std::strtol(argv[1], 0, 10);
    long total = 0;
    for (long i = 1; i <= n; i++) {
        total += i * i;
        std::cout << "i=" << i << " square=" << i * i
                  << " total=" << total << "\\n";
    }
    std::cout << "final=" << total << "\\n";
    return 0;
}
"""

_LOOP_JAVA = """\
public class LoopControl {
    public static void main(String[] args) {
        long n = Long.parseLong(args[0]);
        long total = 0;
        for (long i = 1; i <= n; i++) {
            total += i * i;
            System.out.println("i=" + i + " square=" + (i * i) + " total=" + total);
        }
        System.out.println("final=" + total);
    }
}
"""


SIMILARITY_CASES: tuple[SimilarityCase, ...] = (
    SimilarityCase("basic-io-java", "java", "BasicIo.java", _BASIC_IO_JAVA,
                   stdin="ada lovelace\n"),
    SimilarityCase("basic-io-cpp", "cpp", "basic_io.cpp", _BASIC_IO_CPP,
                   stdin="ada lovelace\n"),
    SimilarityCase("basic-io-c", "c", "basic_io.c", _BASIC_IO_C,
                   stdin="ada lovelace\n"),
    SimilarityCase("numeric-op-java", "java", "NumericOp.java", _NUMERIC_JAVA,
                   args="14 3"),
    SimilarityCase("numeric-op-cpp", "cpp", "numeric_op.cpp", _NUMERIC_CPP,
                   args="14 3"),
    SimilarityCase("numeric-op-c", "c", "numeric_op.c", _NUMERIC_C,
                   args="14 3"),
    SimilarityCase("string-op-java", "java", "StringOp.java", _STRING_JAVA,
                   args="workbench"),
    SimilarityCase("string-op-cpp", "cpp", "string_op.cpp", _STRING_CPP,
                   args="workbench"),
    SimilarityCase("string-op-c", "c", "string_op.c", _STRING_C,
                   args="workbench"),
    SimilarityCase("decision-java", "java", "Decision.java", _DECISION_JAVA,
                   args="-7"),
    SimilarityCase("decision-cpp", "cpp", "decision.cpp", _DECISION_CPP,
                   args="-7"),
    SimilarityCase("decision-c", "c", "decision.c", _DECISION_C,
                   args="-7"),
    SimilarityCase("loop-control-java", "java", "LoopControl.java", _LOOP_JAVA,
                   args="5"),
    SimilarityCase("loop-control-cpp", "cpp", "loop_control.cpp", _LOOP_CPP,
                   args="5"),
    SimilarityCase("loop-control-c", "c", "loop_control.c", _LOOP_C,
                   args="5"),
)
