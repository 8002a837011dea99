#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gitrank/pattern_graph.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace gitrank;

namespace {

std::size_t error_line(std::string_view text)
{
    try {
        (void)parse_pattern_graph(text);
    } catch (const GraphError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(PatternGraphLoader, ParsesEdgesAndComments)
{
    const auto g = parse_pattern_graph("# two repos\n2 2\nr1 p1 3\n\nr2 p1 1 # trailing\nr1 p2 2\n");
    EXPECT_EQ(g.repository_count(), 2u);
    EXPECT_EQ(g.pattern_count(), 2u);
    EXPECT_EQ(g.repositories(), (std::vector<std::string>{"r1", "r2"}));
    EXPECT_EQ(g.indegree(0), 2u);
    EXPECT_EQ(g.indegree(1), 1u);
}

TEST(PatternGraphLoader, ErrorsCarryLineNumbers)
{
    EXPECT_EQ(error_line("1 1\nr p 1\nr p 2\n"), 3u);
    EXPECT_EQ(error_line("1 1\nr p 0\n"), 2u);
    EXPECT_EQ(error_line("1 1\nr p -4\n"), 2u);
    EXPECT_EQ(error_line("1 1\nr p\n"), 2u);
    EXPECT_EQ(error_line("1 1\nr p x\n"), 2u);
    EXPECT_EQ(error_line("# c\n3 1\nr p 1\n"), 2u);
    EXPECT_EQ(error_line("two 1\nr p 1\n"), 1u);
    EXPECT_EQ(error_line("0 1\n"), 1u);
    EXPECT_THROW((void)parse_pattern_graph(""), GraphError);
    EXPECT_THROW((void)parse_pattern_graph("1 1\n"), GraphError);
}

TEST(PatternGraphLoader, FromEdgesRejectsBadInput)
{
    EXPECT_THROW((void)PatternGraph::from_edges({}), GraphError);
    EXPECT_THROW((void)PatternGraph::from_edges({{"r", "p", 0}}), GraphError);
    EXPECT_THROW((void)PatternGraph::from_edges({{"r x", "p", 1}}), GraphError);
    EXPECT_THROW((void)PatternGraph::from_edges({{"r", "p", 1}, {"r", "p", 1}}), GraphError);
}

TEST(PatternGraphLoader, LoadsFromFile)
{
    test::TempDir dir;
    test::write_file(dir / "g.txt", "1 1\nr p 4\n");
    EXPECT_EQ(load_pattern_graph(dir / "g.txt").pattern_count(), 1u);
    EXPECT_THROW((void)load_pattern_graph(dir / "none.txt"), GraphError);
}

TEST(DegreeConfidence, Examples)
{
    EXPECT_EQ(degree_confidence(parse_pattern_graph("2 2\na x 1\na y 1\nb x 1\nb y 1\n")), 1.0);
    EXPECT_EQ(degree_confidence(parse_pattern_graph("2 2\na x 1\nb x 1\na y 1\n")), 0.75);
}

TEST(StdevConfidence, Examples)
{
    const auto g = parse_pattern_graph("2 1\na p 3\nb p 1\n");
    EXPECT_EQ(contribution_stdev(g, 0), 1.0);
    const auto h = parse_pattern_graph("2 2\na p 2\nb q 2\n");
    EXPECT_EQ(contribution_stdev(h, 0), 1.0);
    EXPECT_EQ(stdev_confidence(h), 1.0);
    const auto single = parse_pattern_graph("1 2\na p 7\na q 2\n");
    EXPECT_EQ(stdev_confidence(single), 0.0);
}

TEST(Confidence, CompleteUniformGraphIsTwo)
{
    const auto r = confidence(parse_pattern_graph("3 2\na x 4\nb x 4\nc x 4\na y 1\nb y 1\nc y 1\n"));
    EXPECT_EQ(r.c_degree, 1.0);
    EXPECT_EQ(r.c_stdev, 0.0);
    EXPECT_EQ(r.c, 2.0);
    EXPECT_EQ(confidence_from_components(0.75, 1.0), 0.75);
}

TEST(Confidence, ReportJson)
{
    const auto doc = to_json(confidence(parse_pattern_graph("2 2\na x 1\nb x 1\na y 1\n")));
    EXPECT_EQ(doc["c_degree"], 0.75);
    EXPECT_EQ(doc["patterns"][0]["id"], "x");
    EXPECT_EQ(doc["patterns"][0]["indegree"], 2);
    EXPECT_EQ(doc["patterns"][0]["d"], 2);
    EXPECT_EQ(doc["patterns"][1]["n"], 1);
}

TEST(TupleSummary, Examples)
{
    EXPECT_EQ(tuple_summary(parse_pattern_graph("1 1\na p 5\n")), (std::vector<PatternTuple>{{"p", 5, 1}}));
    EXPECT_EQ(tuple_summary(parse_pattern_graph("2 1\na p 3\nb p 1\n")),
              (std::vector<PatternTuple>{{"p", 4, 2}}));
}

TEST(ConfidenceProperty, MatchesDenseOracle)
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        const auto m = oracle::random_matrix(rng);
        const auto expected = oracle::dense_confidence(m);
        const auto r = confidence(oracle::graph_of(m));
        EXPECT_NEAR(r.c_degree, expected.c_degree, 1e-12);
        EXPECT_NEAR(r.c_stdev, expected.c_stdev, 1e-12);
        EXPECT_NEAR(r.c, expected.c, 1e-12);
        EXPECT_GT(r.c_degree, 0.0);
        EXPECT_LE(r.c_degree, 1.0);
        EXPECT_GE(r.c_stdev, 0.0);
    }
}

TEST(ConfidenceProperty, EdgeOrderInvariant)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const auto m = oracle::random_matrix(rng);
        std::vector<PatternEdge> edges;
        for (std::size_t r = 0; r < m.size(); ++r) {
            for (std::size_t p = 0; p < m[r].size(); ++p) {
                if (m[r][p] > 0) edges.push_back({"repo" + std::to_string(r), "pat" + std::to_string(p), m[r][p]});
            }
        }
        const auto a = confidence(PatternGraph::from_edges(edges));
        std::shuffle(edges.begin(), edges.end(), rng);
        const auto b = confidence(PatternGraph::from_edges(edges));
        EXPECT_EQ(a.c, b.c);
        EXPECT_EQ(a.c_degree, b.c_degree);
        EXPECT_EQ(a.c_stdev, b.c_stdev);
    }
}
