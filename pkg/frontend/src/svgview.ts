// Helpers over the renderer's SVG output. The renderer emits one
// <g id="{featureId}" class="feature"> per implemented feature; these
// functions extract those groups and dim the others for outline toggling.
// The UI never rewrites geometry, only presentation attributes.

export interface FeatureGroup {
  id: string;
  content: string;
  start: number;
  end: number;
}

const OPEN_TAG = /<g\b[^>]*>/g;

function attrOf(tag: string, name: string): string | null {
  const match = tag.match(new RegExp(`${name}="([^"]*)"`));
  return match ? match[1]! : null;
}

/** Locate every top-level feature group, handling nested <g> elements. */
export function featureGroups(svg: string): FeatureGroup[] {
  const groups: FeatureGroup[] = [];
  OPEN_TAG.lastIndex = 0;
  let match: RegExpExecArray | null;
  while ((match = OPEN_TAG.exec(svg)) !== null) {
    const tag = match[0];
    if (attrOf(tag, "class") !== "feature") {
      continue;
    }
    const id = attrOf(tag, "id");
    if (!id) {
      continue;
    }
    // Scan forward to the matching </g>, counting nested groups.
    let depth = 1;
    let cursor = match.index + tag.length;
    const token = /<g\b[^>]*>|<\/g>/g;
    token.lastIndex = cursor;
    let inner: RegExpExecArray | null;
    let end = -1;
    while ((inner = token.exec(svg)) !== null) {
      depth += inner[0] === "</g>" ? -1 : 1;
      if (depth === 0) {
        end = inner.index + inner[0].length;
        break;
      }
    }
    if (end < 0) {
      break;
    }
    groups.push({ id, content: svg.slice(match.index, end), start: match.index, end });
    OPEN_TAG.lastIndex = end;
  }
  return groups;
}

export function groupContents(svg: string): Record<string, string> {
  const out: Record<string, string> = {};
  for (const group of featureGroups(svg)) {
    out[group.id] = group.content;
  }
  return out;
}

/** Dim every feature group except `featureId`; null restores the plain SVG. */
export function highlightFeature(svg: string, featureId: string | null): string {
  if (!featureId) {
    return svg;
  }
  const groups = featureGroups(svg);
  let result = "";
  let cursor = 0;
  for (const group of groups) {
    result += svg.slice(cursor, group.start);
    if (group.id === featureId) {
      result += group.content;
    } else {
      const dimmed = group.content.replace(/^<g\b([^>]*)>/, '<g$1 opacity="0.2">');
      result += dimmed;
    }
    cursor = group.end;
  }
  return result + svg.slice(cursor);
}
