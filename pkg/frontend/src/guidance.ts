/** On-screen annotation guidance: the properties the automatic filters
 * target. The reviewer confirms them by reading, then accepts or rejects. */

export const GUIDANCE_TITLE = "What counts as an explanation";

export const GUIDANCE: string[] = [
  "The explained word or phrase is rare for target-language readers.",
  "The explanation is redundant on the target side: no source words align to it.",
  "It immediately follows the word or phrase being explained.",
  "It contains punctuation such as commas, parentheses, or brackets.",
  "It contains words other than the explained word itself.",
  "The explained expression is typically a named entity (person, place, organization, event).",
  "The entity usually has its own source-language encyclopedia article, while the target-language audience lacks a comparable source.",
];

export const VERDICT_HELP =
  "a = accept (explanation) · r = reject (no explanation) · s = skip · ←/→ = navigate";
