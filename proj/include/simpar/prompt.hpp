#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "simpar/textseg.hpp"

namespace simpar {

inline constexpr std::string_view kInsertSlot = "<Insert Text Here>";
inline constexpr std::string_view kEndMarker = "<|eot_id|>";

// The full simplification prompt. Rendering substitutes the paragraph at the
// single insertion slot and changes nothing else.
inline constexpr std::string_view kSimplifyPromptTemplate =
    R"(---

Role Description:
You are an experienced educator and linguist specializing in simplifying complex texts without losing any key information or changing the content. Your focus is to make texts more accessible and readable for primary and secondary school students, ensuring that the essential information is preserved while the language and structure are adapted for easier comprehension.

---

Task Instructions:
1. Read the Following Text Carefully:
   - Thoroughly understand the content, context, and purpose of the text to ensure all key information is retained in the simplified version.

2. Simplify the Text for Primary/Secondary School Students:
   - Rewrite the text to make it more accessible and easier to understand.
   - Use age-appropriate language and simpler sentence structures.
   - Maintain all key information and do not omit any essential details.
   - Ensure that the original meaning and intent of the text remain unchanged.

3. Preserve Key Information:
   - Identify all essential points, facts, and ideas in the original text.
   - Ensure these elements are clearly presented in the simplified version.

4. Avoid Adding Personal Opinions or Interpretations:
   - Do not introduce new information or personal views.
   - Focus solely on simplifying the original content.

---

Simplification Guidelines:

Sentence Structure:
- Use simple or compound sentences.
- Break down long or complex sentences into shorter ones.
- Ensure each sentence conveys a clear idea.

Vocabulary:
- Use common words familiar to primary and secondary school students.
- Replace advanced or technical terms with simpler synonyms or provide brief explanations.
- Avoid jargon unless it is essential, and explain it if used.

Clarity and Coherence:
- Organize the text logically with clear paragraphs.
- Use transitional words to connect ideas smoothly.
- Ensure pronouns clearly refer to the correct nouns to avoid confusion.
- Eliminate redundancies and unnecessary repetitions.

Tone and Style:
- Maintain a neutral and informative tone.
- Avoid overly formal language.
- Write in the third person unless the text requires otherwise.

---

Output Format:
Provide the simplified text in clear, well-organized paragraphs.
Do not include the original text in your output.
Do not add any additional commentary or notes.
Ensure the final output is free of grammatical errors and is easy to read.
Output <|eot_id|> right after the simplified text.

---

Example Simplifications:

Example 1:

Original Text:
"Photosynthesis is the process by which green plants and some other organisms use sunlight to synthesize foods from carbon dioxide and water. Photosynthesis in plants generally involves the green pigment chlorophyll and generates oxygen as a byproduct."

Simplified Text:
"Photosynthesis is how green plants make food using sunlight, carbon dioxide, and water. They use a green substance called chlorophyll, and the process produces oxygen.<|eot_id|>"


Example 2:

Original Text:
"Global warming refers to the long-term rise in the average temperature of the Earth's climate system, an aspect of climate change shown by temperature measurements and by multiple effects of the warming."

Simplified Text:
"Global warming means the Earth's average temperature is increasing over a long time. This is part of climate change and is shown by temperature records and various effects.<|eot_id|>"


Example 3:

Original Text:
"The mitochondrion, often referred to as the powerhouse of the cell, is a double-membrane-bound organelle found in most eukaryotic organisms, responsible for the biochemical processes of respiration and energy production through the generation of adenosine triphosphate (ATP)."

Simplified Text:
"A mitochondrion is a part of most cells that acts like a powerhouse. It has two membranes and makes energy for the cell by producing something called ATP.<|eot_id|>"

---

Text to Simplify:
<Insert Text Here>

---

Your Output:
)";

// Byte-exact template rendering: the paragraph replaces the slot, nothing
// else is altered.
inline std::string render_prompt(std::string_view paragraph_text) {
    std::string prompt(kSimplifyPromptTemplate);
    const std::size_t at = prompt.find(kInsertSlot);
    prompt.replace(at, kInsertSlot.size(), paragraph_text);
    return prompt;
}

// Cuts the output at the first end-of-turn marker (models sometimes append
// commentary after it) and trims trailing whitespace. Idempotent.
inline std::string strip_end_marker(std::string output,
                                    std::string_view marker = kEndMarker) {
    const std::size_t at = output.find(marker);
    if (at != std::string::npos) output.erase(at);
    while (!output.empty() && is_space(output.back())) output.pop_back();
    return output;
}

// Instruction-leak patterns observed in raw model output: responses that
// echo the output-format instructions instead of simplifying.
struct DegeneratePatterns {
    std::vector<std::string> prefixes = {"(Note:"};
    std::vector<std::string> substrings = {"Simplification of the text", "Simplified Text:"};
};

inline const DegeneratePatterns& default_degenerate_patterns() {
    static const DegeneratePatterns patterns;
    return patterns;
}

// True for empty output or output matching a configured instruction-leak
// pattern. Detection only; removal from the corpus is a separate, opt-in
// decision.
inline bool detect_degenerate(std::string_view output,
                              const DegeneratePatterns& patterns = default_degenerate_patterns()) {
    std::string_view trimmed = output;
    while (!trimmed.empty() && is_space(trimmed.front())) trimmed.remove_prefix(1);
    while (!trimmed.empty() && is_space(trimmed.back())) trimmed.remove_suffix(1);
    if (trimmed.empty()) return true;
    for (const std::string& prefix : patterns.prefixes) {
        if (trimmed.substr(0, prefix.size()) == prefix) return true;
    }
    for (const std::string& needle : patterns.substrings) {
        if (trimmed.find(needle) != std::string_view::npos) return true;
    }
    return false;
}

}  // namespace simpar
