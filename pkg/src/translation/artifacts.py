"""The bundle produced by a GDLZ to GDL translation."""

from typing import Iterable, Literal, Optional, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, InstanceOf

from src.models.formula import Does, Formula, Legal, iter_formula
from src.models.game import GroundAction
from src.models.path import Path
from src.models.st_model import STModel

from .actions import PathBounds, TranslationBounds, flatten_action, unflatten_action


class GdlArtifacts(BaseModel):
    """Translated model, optional translated path and the action map."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mode: Literal["path", "complete"]
    model: InstanceOf[STModel] = Field(..., description="GDL model (no numerical variables)")
    path: Optional[InstanceOf[Path]] = Field(default=None, description="Translated path")
    action_map: dict[GroundAction, str] = Field(default_factory=dict)
    order_props: frozenset[str] = Field(default=frozenset(), description="Order propositions")
    bounds: Optional[Union[PathBounds, TranslationBounds]] = None
    source_vars: tuple[str, ...] = Field(default=(), description="Variables of the source game")

    def flat(self, action: GroundAction) -> str:
        return self.action_map.get(action) or flatten_action(action)

    def inverse(self) -> dict[str, GroundAction]:
        return {flat: action for action, flat in self.action_map.items()}

    def source_action(self, flat: str) -> GroundAction:
        """Source action of a flat name, from the map or by parsing the name."""
        return self.inverse().get(flat) or unflatten_action(flat)

    def with_path(self, path: Path) -> "GdlArtifacts":
        return self.model_copy(update={"path": path})

    def declaring(self, formulas: Iterable[Formula]) -> "GdlArtifacts":
        """Artifacts whose model also declares every flat action that the
        translated ``formulas`` mention.

        Names outside the action map have no legality pairs, so they are never
        legal in the translated model.
        """
        signature = self.model.signature
        extra = {
            GroundAction(agent=node.agent, name=node.action)
            for formula in formulas
            for node in iter_formula(formula)
            if isinstance(node, (Legal, Does))
            and node.agent in signature.agents
            and signature.action_schema(node.agent, node.action) is None
        }
        if not extra:
            return self
        logger.debug(f"Declaring {len(extra)} flat actions outside the action map")
        model = self.model.with_actions(sorted(extra, key=GroundAction.sort_key))
        path = None
        if self.path is not None:
            path = Path(model=model, states=self.path.states, joints=self.path.joints)
        return self.model_copy(update={"model": model, "path": path})
