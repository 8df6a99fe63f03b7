// SPDX-License-Identifier: Apache-2.0
// Prompt templates. Slots: {offense}, {defense}, {tactic}, {actions}, {question}.
// Whitespace, including trailing spaces and literal backslash sequences, is significant.
#include "prompt_templates.hpp"

namespace courtside::detail {

const std::string_view kOverviewThird = R"TPL(You are the basketball coach who knows basketball tactics. 
The tactic description and actions are provided.        
Please briefly explain the question from casual fans.
When explaining offensive tactics, describe using the attacking players, and when explaining defensive tactics, describe using the defending players.

[PLAYER INFORMATION]
Offense Players: {offense}
Defense Players: {defense}

[CONSTRAINT] 
Note that you have to answer integrating tactic description and actions within 2 sentences.

[TACTIC]
{tactic}

[ACTION]
{actions}
    
Please explain {question}.)TPL";

const std::string_view kOverviewFirst = R"TPL(You are the basketball coach who knows basketball tactics. 
The response should be in the format of a role-play dialogue between players, and no other text should be added besides the players' conversation.
I would like it to consist of only 2 to 4 conversations between players.
When explaining offensive tactics, describe using the attacking players, and when explaining defensive tactics, describe using the defending players.

[ANSWER FORMAT]
The Answer Format is as follows: 
Stephen Curry: Alright, let's now use the pick and roll tactic. Draymond Green, set a screen for me. Then, I'll make my move. \n\n
Draymond Green: Let's confuse the opponent with our tactic and score. \n\n


[PLAYER INFORMATION]
Offense Players: {offense}
Defense Players: {defense}

[CONSTRAINT] 
Note that you have to answer integrating tactic description and actions within 2 sentences.

[TACTIC]
{tactic}

[ACTION]
{actions}

Please explain {question}.)TPL";

const std::string_view kActionsThird = R"TPL(The actions represent player's movements such as Cut, Pass, Screen, and Shoot. 

[CONSTRAINT]
1. The format of the answer must be the same as the explanation and must be described in third person within 1 sentence.
2. The names of all players must be accurately written.
3. When explaining offensive tactics, describe using the attacking players, and when explaining defensive tactics, describe using the defending players. Answer only one offensive or defensive tactic for me.
4. All conversations should include the reason why that player is taking such action.
The reasons for cut: create scoring opportunities, disturb the defense, enhance ball movement, space the floor, or implement offensive strategy.
The reasons for pass: Create Better Scoring Opportunities, Control the Pace of the Game, Enhance Team Play, Overcome Tight Defense, or Improve Court Vision and Awareness.
The reasons for screen: Disrupt Defensive Schemes, Force Defensive Adjustments,  Diversify Offensive Strategies, or Creating space for other players.

[PLAYER INFORMATION]
Offense Players: {offense}
Defense Players: {defense}

[ANSWER FORMAT]
1. Generate the answer using only conversational responses, without including any action titles or additional explanations.
2. Each conversation will be divided by \n\n and ensure that the Answer Format is as follows:

Action 1. Explanation 1 \n\n Action 2. Explanation 2 \n\n Action 3. Explanation 3 \n\n

[ACTION]
{actions}

Please explain question "{question}" based on each individual action with reasoning)TPL";

const std::string_view kActionsFirst = R"TPL(The actions represent player's movements such as Cut, Pass, Screen, and Shoot. 

[CONSTRAINT]
1. The answer format should be conversation between two players if the action is the interaction between two players with first person perspective.
2. In the "Screen", the two players are on different teams, and one player is setting a screen on another. It\'s important not to inform or alert the other player about the screen being set; instead, dialogue should be created that disrupts or expresses confusion.
3. Please ensure that the player name is the full name, and the "Shoot" action results in only one answer from the Shooter. 
4. The response should be in the format of a role-play dialogue between players, and no other text should be added besides the players\' conversation. 
5. When explaining offensive tactics, describe using the attacking players, and when explaining defensive tactics, describe using the defending players. Please explain only one of these in response to the question.
6. All conversations SHOULD include the detailed and complex reason why that player is taking such action within one or two sentences for one conversation by referring to below reasons for each action.
The reasons for cut: create scoring opportunities, disturb the defense, enhance ball movement, space the floor, or implement offensive strategy.
The reasons for pass: Create Better Scoring Opportunities, Control the Pace of the Game, Enhance Team Play, Overcome Tight Defense, or Improve Court Vision and Awareness.
The reasons for screen: Disrupt Defensive Schemes, Force Defensive Adjustments, Diversify Offensive Strategies, or Creating space for other players.

[PLAYER INFORMATION]
Offense Players: {offense}
Defense Players: {defense}

[ANSWER FORMAT]
1. Generate the answer using only conversational responses with reasons, without including any action titles or additional explanations.
2. "Pass" and "Screen" should consist of two conversations, while "Shoot" should consist of one conversation.
This example is an answer format of "Pass" and "Screen" actions. 
Example 1) Action: Pass Player 1 -> Player 2 Answer: Player 1: Conversation 1 \n Player 2: Conversation 2 \n\n 
Example 2) Action: Screen Player 3 -> Player 4 Answer: Player 3: Conversation 3 \n Player 4: Conversation 4 \n\n 
This example is an answer format of "Shoot" action. Example) Action: Shoot Player 2 Answer: Player 2: Conversation 5 \n
3. Each conversation will be divided by and ensure that the Answer Format is as follows:
Player 1: Conversation 1 \n Player 2: Conversation 2 \n\n Player 2: Conversation 3 \n Player 3: Conversation 4 \n\n Player 2: Conversation 5 \n
Make sure these \n and \n\n delimiter.

[ACTION]
{actions}


PLEASE FOLLOW and MAKE SURE [Answer Format]!!!.
Please explain question "{question}" based on each individual action with reasoning)TPL";

}  // namespace courtside::detail
