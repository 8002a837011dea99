#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "gitrank/function_scan.hpp"
#include "gitrank/lexer.hpp"

using namespace gitrank;

namespace {

struct Scanned {
    TokenStream stream;
    FunctionScan scan;
};

Scanned scan(std::string_view src)
{
    Scanned s{tokenize(src), {}};
    s.scan = extract_functions(s.stream.tokens);
    return s;
}

std::vector<std::string> names(std::string_view src)
{
    std::vector<std::string> out;
    for (const auto& f : scan(src).scan.functions) out.push_back(f.name);
    return out;
}

using Names = std::vector<std::string>;

}  // namespace

TEST(ExtractFunctions, SimpleDefinition)
{
    const auto s = scan("int f(){return 0;}");
    ASSERT_EQ(s.scan.functions.size(), 1u);
    const auto& f = s.scan.functions[0];
    EXPECT_EQ(f.name, "f");
    const auto body = f.body(s.stream.tokens);
    EXPECT_EQ(body.front().text, "{");
    EXPECT_EQ(body.back().text, "}");
}

TEST(ExtractFunctions, DeclarationIsNotADefinition)
{
    EXPECT_TRUE(names("int f();").empty());
    EXPECT_TRUE(names("int f(int a, char* b);\nextern void g(void);").empty());
}

TEST(ExtractFunctions, MethodInsideStruct)
{
    EXPECT_EQ(names("struct S{int g(){return 1;}};"), Names{"g"});
}

TEST(ExtractFunctions, NamespacesAndClasses)
{
    const char* src = R"(
namespace a { namespace b {
class C : public Base {
public:
    C() : x_{1}, y_(2) {}
    ~C() override {}
    int get() const noexcept { return x_; }
    auto sum(int v) -> int { return x_ + v; }
    bool operator==(const C& o) const { return x_ == o.x_; }
    int x_{0};
    int y_ = 3;
};
}}
int a::b::C::late(int v) { return v; }
)";
    EXPECT_EQ(names(src),
              (Names{"C", "~C", "get", "sum", "operator==", "a::b::C::late"}));
}

TEST(ExtractFunctions, ExternCBlock)
{
    EXPECT_EQ(names("extern \"C\" {\nint f(void) { return 0; }\n}\n"), Names{"f"});
}

TEST(ExtractFunctions, InitializersAreNotFunctions)
{
    EXPECT_TRUE(names("int t[] = {1, 2};\nstruct P p = { .x = 1 };\nstd::vector<int> v{1, 2};")
                    .empty());
    EXPECT_TRUE(names("auto f = [](int x) { return x; };").empty());
    EXPECT_TRUE(names("enum E { A, B };\nunion U { int i; float f; };").empty());
}

TEST(ExtractFunctions, LambdasBelongToEnclosingFunction)
{
    const auto s = scan("void outer() { auto l = [](int y) { return y; }; struct L { void m() {} }; }");
    ASSERT_EQ(s.scan.functions.size(), 1u);
    EXPECT_EQ(s.scan.functions[0].name, "outer");
}

TEST(ExtractFunctions, PreprocessorLinesIgnored)
{
    const char* src = "#define BODY(x) { return x; }\n#if 0\n#endif\nint f(int x)\n{\n    return x;\n}\n";
    const auto s = scan(src);
    ASSERT_EQ(s.scan.functions.size(), 1u);
    EXPECT_EQ(s.scan.functions[0].start_line, 4u);
    EXPECT_EQ(s.scan.functions[0].end_line, 7u);
}

TEST(ExtractFunctions, TemplatesAndAttributes)
{
    const char* src = R"(
template <typename T>
[[nodiscard]] T twice(T v) { return v + v; }
static inline int __attribute__((always_inline)) fast(int x) { return x; }
)";
    EXPECT_EQ(names(src), (Names{"twice", "fast"}));
}

TEST(ExtractFunctions, ControlStatementsAtFileScopeAreNotFunctions)
{
    EXPECT_TRUE(names("if (x) { y(); }").empty());
}

TEST(ExtractFunctions, UnclosedBodyKeepsEarlierFunctions)
{
    const auto s = scan("int ok(){return 1;}\nint broken(){ if (x) {\n");
    EXPECT_EQ(s.scan.functions.size(), 1u);
    EXPECT_EQ(s.scan.functions[0].name, "ok");
    EXPECT_FALSE(s.scan.diagnostics.empty());
}

TEST(ExtractFunctions, StrayClosingBraceIsDiagnosed)
{
    const auto s = scan("}\nint f(){return 0;}\n");
    EXPECT_EQ(s.scan.functions.size(), 1u);
    EXPECT_FALSE(s.scan.diagnostics.empty());
}

TEST(ExtractFunctions, BracesInsideLiteralsAndComments)
{
    const auto s = scan("int f() { const char* s = \"}\"; /* } */ return '}'; }\nint g() { return 0; }");
    EXPECT_EQ(s.scan.functions.size(), 2u);
    EXPECT_TRUE(s.scan.diagnostics.empty());
}
